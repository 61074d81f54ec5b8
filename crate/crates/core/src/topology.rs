//! Nonemptiness, dimension and connectivity of prevarieties.
//!
//! Everything is derived from a covering list of closed cells. Two cells are
//! adjacent iff their closed polyhedra intersect, which is decided by the
//! feasibility of the merged constraint system. Connected components of the
//! prevariety are the connected components of this cell graph.

use std::collections::HashMap;
use std::fmt;

use crate::cells::{self, Cell, CellOptions};
use crate::error::{Error, Result};
use crate::lp;
use crate::poly::{Point, PolySystem};
use crate::rational::Rat;

/// Cells as vertices, edges between cells that intersect.
#[derive(Clone, Debug)]
pub struct CellGraph {
    pub cells: Vec<Cell>,
    pub edges: Vec<(usize, usize)>,
}

/// Whether two closed cells share a point.
pub fn cells_intersect(a: &Cell, b: &Cell) -> bool {
    if a.dimension == 0 {
        return b.system.is_satisfied_by(a.witness.coords());
    }
    if b.dimension == 0 {
        return a.system.is_satisfied_by(b.witness.coords());
    }
    let merged = a.system.merged(&b.system).expect("cells share the ambient dimension");
    lp::feasible(&merged).is_feasible()
}

/// The full adjacency graph on the covering cells.
pub fn cell_graph(sys: &PolySystem, opts: &CellOptions) -> Result<CellGraph> {
    let cells = cells::cover_cells(sys, opts)?;
    let mut edges = Vec::new();
    for i in 0..cells.len() {
        for j in (i + 1)..cells.len() {
            if cells_intersect(&cells[i], &cells[j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(CellGraph { cells, edges })
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
    }
}

/// Number of connected components of the union of `cells`.
pub fn count_components(cells: &[Cell]) -> usize {
    let mut dsu = DisjointSets::new(cells.len());
    // Point cells meet each other only when they coincide.
    let mut by_point: HashMap<&Point, usize> = HashMap::new();
    for (i, c) in cells.iter().enumerate() {
        if c.dimension == 0 {
            if let Some(&j) = by_point.get(&c.witness) {
                dsu.union(i, j);
            } else {
                by_point.insert(&c.witness, i);
            }
        }
    }
    for i in 0..cells.len() {
        for j in (i + 1)..cells.len() {
            if cells[i].dimension == 0 && cells[j].dimension == 0 {
                continue;
            }
            if dsu.find(i) == dsu.find(j) {
                continue;
            }
            if cells_intersect(&cells[i], &cells[j]) {
                dsu.union(i, j);
            }
        }
    }
    dsu.sets
}

/// A point of the prevariety, or `None` when it is empty. With no
/// polynomials the prevariety is the whole space and the origin is returned.
pub fn intersect_nonempty(sys: &PolySystem, opts: &CellOptions) -> Result<Option<Point>> {
    cells::witness_or_empty(sys, opts)
}

pub fn connected_components(sys: &PolySystem, opts: &CellOptions) -> Result<usize> {
    Ok(count_components(&cells::cover_cells(sys, opts)?))
}

/// Connectivity of a nonempty prevariety.
pub fn is_connected(sys: &PolySystem, opts: &CellOptions) -> Result<bool> {
    match connected_components(sys, opts)? {
        0 => Err(Error::EmptyPrevariety),
        k => Ok(k == 1),
    }
}

/// Maximum cell dimension, `-1` when empty.
pub fn prevariety_dimension(sys: &PolySystem, opts: &CellOptions) -> Result<i64> {
    Ok(cells::cover_cells(sys, opts)?
        .iter()
        .map(|c| c.dimension)
        .max()
        .unwrap_or(-1))
}

/// `λ ⊙ x ⊕ μ ⊙ y`, i.e. `min(λ + x_i, μ + y_i)` componentwise.
pub fn tropical_combination(x: &Point, y: &Point, lambda: &Rat, mu: &Rat) -> Result<Point> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    Ok(Point(
        x.coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| {
                let l = lambda + a;
                let r = mu + b;
                if r < l {
                    r
                } else {
                    l
                }
            })
            .collect(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyReport {
    pub nonempty: bool,
    pub component_count: usize,
    pub dimension: i64,
    pub finite: bool,
    /// The points of a finite prevariety, sorted.
    pub points: Option<Vec<Point>>,
}

impl TopologyReport {
    pub fn from_cells(cells: &[Cell]) -> Self {
        let component_count = count_components(cells);
        let dimension = cells.iter().map(|c| c.dimension).max().unwrap_or(-1);
        let finite = cells.iter().all(|c| c.dimension == 0);
        let points = finite.then(|| {
            let mut pts: Vec<Point> = cells.iter().map(|c| c.witness.clone()).collect();
            pts.sort();
            pts.dedup();
            pts
        });
        TopologyReport {
            nonempty: !cells.is_empty(),
            component_count,
            dimension,
            finite,
            points,
        }
    }
}

/// Nonemptiness, component count, dimension and finiteness in one pass.
pub fn analyze(sys: &PolySystem, opts: &CellOptions) -> Result<TopologyReport> {
    Ok(TopologyReport::from_cells(&cells::cover_cells(sys, opts)?))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for TopologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nonempty: {}", yes_no(self.nonempty))?;
        writeln!(f, "components: {}", self.component_count)?;
        writeln!(f, "dimension: {}", self.dimension)?;
        writeln!(f, "finite: {}", yes_no(self.finite))?;
        if let Some(points) = &self.points {
            for p in points {
                writeln!(f, "point: {p}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::TropicalPolynomial;

    fn h() -> TropicalPolynomial {
        TropicalPolynomial::from_pairs(1, &[(&[2], 0), (&[1], 0), (&[0], 1)]).unwrap()
    }

    fn line() -> TropicalPolynomial {
        TropicalPolynomial::from_pairs(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[0, 0], 0)]).unwrap()
    }

    fn sys(polys: Vec<TropicalPolynomial>) -> PolySystem {
        PolySystem::from_polys(polys).unwrap()
    }

    #[test]
    fn two_point_hypersurface() {
        let opts = CellOptions::default();
        let s = sys(vec![h()]);
        assert_eq!(connected_components(&s, &opts).unwrap(), 2);
        assert!(!is_connected(&s, &opts).unwrap());
        let r = analyze(&s, &opts).unwrap();
        assert!(r.finite);
        assert_eq!(r.points, Some(vec![Point(vec![rat(0)]), Point(vec![rat(1)])]));
        assert_eq!(
            r.to_string(),
            "nonempty: yes\ncomponents: 2\ndimension: 0\nfinite: yes\npoint: 0\npoint: 1\n"
        );
    }

    #[test]
    fn tropical_line_is_connected() {
        let opts = CellOptions::default();
        let s = sys(vec![line()]);
        assert!(is_connected(&s, &opts).unwrap());
        assert_eq!(prevariety_dimension(&s, &opts).unwrap(), 1);
        let g = cell_graph(&s, &opts).unwrap();
        assert_eq!(g.cells.len(), 3);
        assert_eq!(g.edges.len(), 3);
    }

    #[test]
    fn empty_inputs() {
        let opts = CellOptions::default();
        let a = TropicalPolynomial::from_pairs(1, &[(&[0], 0), (&[1], 0)]).unwrap();
        let b = TropicalPolynomial::from_pairs(1, &[(&[0], 0), (&[1], 1)]).unwrap();
        let s = sys(vec![a, b]);
        assert_eq!(intersect_nonempty(&s, &opts).unwrap(), None);
        assert_eq!(connected_components(&s, &opts).unwrap(), 0);
        assert_eq!(is_connected(&s, &opts), Err(Error::EmptyPrevariety));
        assert_eq!(prevariety_dimension(&s, &opts).unwrap(), -1);

        let whole = PolySystem::new(3, vec![]).unwrap();
        assert_eq!(intersect_nonempty(&whole, &opts).unwrap(), Some(Point::origin(3)));
        assert_eq!(prevariety_dimension(&whole, &opts).unwrap(), 3);
        assert_eq!(connected_components(&whole, &opts).unwrap(), 1);
    }

    #[test]
    fn combination_examples() {
        let x = Point(vec![rat(0), rat(1)]);
        let y = Point(vec![rat(1), rat(0)]);
        assert_eq!(tropical_combination(&x, &x, &rat(0), &rat(0)).unwrap(), x);
        assert_eq!(
            tropical_combination(&x, &y, &rat(0), &rat(0)).unwrap(),
            Point(vec![rat(0), rat(0)])
        );
        let shifted = tropical_combination(&x, &y, &rat(-5), &rat(5)).unwrap();
        assert_eq!(shifted, Point(vec![rat(-5), rat(-4)]));
        assert!(tropical_combination(&x, &Point(vec![ratio(1, 2)]), &rat(0), &rat(0)).is_err());
    }
}
