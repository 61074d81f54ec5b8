//! Pair-indexed cells of tropical prevarieties.
//!
//! A cell fixes, for every polynomial `f_i`, two distinct terms `β_i, γ_i`
//! and collects the points where both attain the minimum of `f_i`:
//!
//! ```text
//! c_β + β·x = c_γ + γ·x ≤ c_α + α·x   for all α in supp(f_i)
//! ```
//!
//! The prevariety is the union of its feasible cells. Cells may overlap.
//!
//! Cells are found by a depth-first search over the polynomials, extending a
//! partial choice one pair at a time and pruning infeasible prefixes with the
//! exact LP engine. [`enumerate_cells`] returns every feasible choice;
//! [`cover_cells`] returns a sub-list that still covers the prevariety, which
//! is what nonemptiness, dimension and connectivity need.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LinearSystem, Reduced};
use crate::poly::{Point, PolySystem, TropicalPolynomial};
use crate::rational::{rat, Rat};

/// Default limit on the number of pair extensions tried by one search.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOptions {
    /// Maximum number of search nodes (pair extensions) before giving up
    /// with [`Error::CapExceeded`].
    pub cap: u64,
}

impl Default for CellOptions {
    fn default() -> Self {
        CellOptions { cap: DEFAULT_CAP }
    }
}

impl CellOptions {
    pub fn with_cap(cap: u64) -> Self {
        CellOptions { cap }
    }
}

/// For each polynomial, the indices `(β, γ)` with `β < γ` of the two terms
/// required to attain the minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellChoice(pub Vec<(usize, usize)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub choice: CellChoice,
    pub system: LinearSystem,
    /// A point of the cell, in its relative interior when the LP finds one.
    pub witness: Point,
    pub dimension: i64,
}

/// Dimension of a feasible cell.
pub fn cell_dimension(c: &Cell) -> i64 {
    lp::affine_dimension(&c.system)
}

type Row = (Vec<Rat>, Rat);

/// Constraints of "terms `b` and `g` of `f` attain the minimum".
fn pair_constraints(f: &TropicalPolynomial, b: usize, g: usize) -> (Row, Vec<Row>) {
    let terms = f.terms();
    let diff = |p: usize, q: usize| -> Vec<Rat> {
        terms[p]
            .exponent
            .iter()
            .zip(&terms[q].exponent)
            .map(|(x, y)| rat(i64::from(*x) - i64::from(*y)))
            .collect()
    };
    let eq = (diff(b, g), &terms[g].coefficient - &terms[b].coefficient);
    let ineqs = (0..terms.len())
        .filter(|&a| a != b && a != g)
        .map(|a| (diff(b, a), &terms[a].coefficient - &terms[b].coefficient))
        .collect();
    (eq, ineqs)
}

fn satisfies(rows_eq: &Row, rows_le: &[Row], x: &[Rat]) -> bool {
    let at = |a: &[Rat]| -> Rat {
        a.iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    };
    at(&rows_eq.0) == rows_eq.1 && rows_le.iter().all(|(a, b)| at(a) <= *b)
}

#[derive(Clone)]
struct Node {
    reduced: Reduced,
    system: LinearSystem,
    choice: Vec<(usize, usize)>,
    witness: Vec<Rat>,
}

struct Search<'a> {
    polys: &'a [TropicalPolynomial],
    order: Vec<usize>,
    cap: u64,
    nodes: u64,
    /// Keep only a covering subset of the choices.
    cover: bool,
    first_only: bool,
    leaves: Vec<Node>,
}

impl Search<'_> {
    fn run(&mut self, node: Node, level: usize) -> Result<()> {
        if self.first_only && !self.leaves.is_empty() {
            return Ok(());
        }
        if level == self.order.len() {
            self.leaves.push(node);
            return Ok(());
        }
        let pi = self.order[level];
        let f = &self.polys[pi];
        let mut children = Vec::new();
        'pairs: for b in 0..f.len() {
            for g in (b + 1)..f.len() {
                self.nodes += 1;
                if self.nodes > self.cap {
                    return Err(Error::CapExceeded { cap: self.cap });
                }
                let (eq, ineqs) = pair_constraints(f, b, g);
                let mut reduced = node.reduced.clone();
                let mut changed = reduced.add_eq(eq.0.clone(), eq.1.clone());
                for (a, r) in &ineqs {
                    changed |= reduced.add_le(a.clone(), r.clone());
                }
                if reduced.is_infeasible() {
                    continue;
                }
                let witness = if satisfies(&eq, &ineqs, &node.witness) {
                    node.witness.clone()
                } else {
                    match reduced.solve(None).witness {
                        Some(w) => w.0,
                        None => continue,
                    }
                };
                let mut system = node.system.clone();
                system.add_eq(eq.0.clone(), eq.1.clone()).expect("pair rows have length n");
                for (a, r) in &ineqs {
                    system.add_le(a.clone(), r.clone()).expect("pair rows have length n");
                }
                let mut choice = node.choice.clone();
                choice[pi] = (b, g);
                let child = Node {
                    reduced,
                    system,
                    choice,
                    witness,
                };
                if self.cover && !changed {
                    // The pair holds on the whole parent polyhedron, so its
                    // cell contains every sibling's cell.
                    children.clear();
                    children.push((child, (eq, ineqs)));
                    break 'pairs;
                }
                children.push((child, (eq, ineqs)));
            }
        }
        if self.cover && children.len() > 1 {
            children = drop_contained(children);
        }
        for (child, _) in children {
            self.run(child, level + 1)?;
        }
        Ok(())
    }
}

/// Whether child `a` lies inside child `b`; both refine the same parent, so
/// only the rows `b` added need checking.
fn child_within(a: &Node, b: &(Row, Vec<Row>)) -> bool {
    let (eq, ineqs) = b;
    if !satisfies(eq, ineqs, &a.witness) {
        return false;
    }
    if a.reduced.is_point() {
        return true;
    }
    let neg: Vec<Rat> = eq.0.iter().map(|v| -v).collect();
    a.reduced.implies_le(&eq.0, &eq.1)
        && a.reduced.implies_le(&neg, &-&eq.1)
        && ineqs.iter().all(|(r, c)| a.reduced.implies_le(r, c))
}

/// Removes children whose polyhedron lies in a sibling's; the sibling's
/// subtree covers everything the removed subtree would. Among equal
/// polyhedra the first is kept.
fn drop_contained(children: Vec<(Node, (Row, Vec<Row>))>) -> Vec<(Node, (Row, Vec<Row>))> {
    let k = children.len();
    let mut keep = vec![true; k];
    for a in 0..k {
        for b in 0..k {
            if a == b || !keep[b] {
                continue;
            }
            if child_within(&children[a].0, &children[b].1)
                && (b < a || !child_within(&children[b].0, &children[a].1))
            {
                keep[a] = false;
                break;
            }
        }
    }
    children
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

fn greedy_order(polys: &[TropicalPolynomial], dim: usize) -> Vec<usize> {
    let vars: Vec<Vec<usize>> = polys.iter().map(|p| p.variables()).collect();
    let mut seen = vec![false; dim];
    let mut used = vec![false; polys.len()];
    let mut order = Vec::with_capacity(polys.len());
    for _ in 0..polys.len() {
        let next = (0..polys.len())
            .filter(|&i| !used[i])
            .min_by_key(|&i| {
                let fresh = vars[i].iter().filter(|&&v| !seen[v]).count();
                (fresh, polys[i].len(), i)
            })
            .expect("an unused polynomial remains");
        used[next] = true;
        for &v in &vars[next] {
            seen[v] = true;
        }
        order.push(next);
    }
    order
}

fn search(sys: &PolySystem, opts: &CellOptions, cover: bool, first_only: bool) -> Result<Vec<Node>> {
    let n = sys.dim();
    let polys = sys.polys();
    let order = if cover {
        greedy_order(polys, n)
    } else {
        (0..polys.len()).collect()
    };
    let mut s = Search {
        polys,
        order,
        cap: opts.cap,
        nodes: 0,
        cover,
        first_only,
        leaves: Vec::new(),
    };
    let root = Node {
        reduced: Reduced::new(n),
        system: LinearSystem::new(n),
        choice: vec![(0, 0); polys.len()],
        witness: vec![Rat::zero(); n],
    };
    s.run(root, 0)?;
    Ok(s.leaves)
}

/// Computes the dimension and a relative-interior witness of a feasible leaf.
fn finish(node: Node) -> Cell {
    let Node {
        system,
        choice,
        witness,
        ..
    } = node;
    let n = system.n();
    let eq_rank = lp::rank(system.equalities().iter().map(|c| c.coeffs.clone()).collect());
    if eq_rank == n {
        return Cell {
            choice: CellChoice(choice),
            system,
            witness: Point(witness),
            dimension: 0,
        };
    }
    let implicit = lp::implicit_equalities(&system).expect("leaf systems are feasible");
    let mut rows: Vec<Vec<Rat>> = system.equalities().iter().map(|c| c.coeffs.clone()).collect();
    rows.extend(implicit.iter().map(|&i| system.inequalities()[i].coeffs.clone()));
    let dimension = n as i64 - lp::rank(rows) as i64;
    let loose: Vec<usize> = (0..system.inequalities().len())
        .filter(|i| !implicit.contains(i))
        .collect();
    let witness = if loose.is_empty() {
        Point(witness)
    } else {
        lp::maximize_margin(&system, &loose)
            .witness
            .expect("leaf systems are feasible")
    };
    Cell {
        choice: CellChoice(choice),
        system,
        witness,
        dimension,
    }
}

/// Every feasible pair choice, in lexicographic order of the choice indices.
pub fn enumerate_cells(sys: &PolySystem, opts: &CellOptions) -> Result<Vec<Cell>> {
    Ok(search(sys, opts, false, false)?
        .into_iter()
        .map(finish)
        .collect())
}

/// Feasible cells whose union is the whole prevariety.
///
/// A pair is skipped when its polyhedron lies inside a sibling pair's, since
/// the sibling's subtree then covers it.
pub fn cover_cells(sys: &PolySystem, opts: &CellOptions) -> Result<Vec<Cell>> {
    Ok(search(sys, opts, true, false)?
        .into_iter()
        .map(finish)
        .collect())
}

/// A point of the prevariety, or `None` when it is empty.
pub fn witness_or_empty(sys: &PolySystem, opts: &CellOptions) -> Result<Option<Point>> {
    Ok(search(sys, opts, true, true)?
        .into_iter()
        .next()
        .map(|leaf| finish(leaf).witness))
}

/// Whether the polyhedron of `inner` lies inside that of `outer`.
pub fn is_contained(inner: &Cell, outer: &Cell) -> bool {
    if !outer.system.is_satisfied_by(inner.witness.coords()) {
        return false;
    }
    if inner.dimension == 0 {
        return true;
    }
    let bounded_by = |coeffs: &[Rat], rhs: &Rat| -> bool {
        let r = lp::maximize(&inner.system, coeffs).expect("same dimension");
        r.objective.is_some_and(|v| v <= *rhs)
    };
    outer.system.inequalities().iter().all(|c| bounded_by(&c.coeffs, &c.rhs))
        && outer.system.equalities().iter().all(|c| {
            let neg: Vec<Rat> = c.coeffs.iter().map(|v| -v).collect();
            bounded_by(&c.coeffs, &c.rhs) && bounded_by(&neg, &-&c.rhs)
        })
}

/// Indices of cells not contained in another cell of larger dimension (or in
/// an earlier cell with the same polyhedron).
pub fn maximal_cells(cells: &[Cell]) -> Vec<usize> {
    (0..cells.len())
        .filter(|&i| {
            !cells.iter().enumerate().any(|(j, other)| {
                j != i
                    && other.dimension >= cells[i].dimension
                    && is_contained(&cells[i], other)
                    && (other.dimension > cells[i].dimension || j < i || !is_contained(other, &cells[i]))
            })
        })
        .collect()
}

/// A maximal face of the regular subdivision of a planar Newton polygon,
/// given by the indices of the support points on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubdivisionFace {
    pub tight_set: Vec<usize>,
}

fn require_planar(f: &TropicalPolynomial) -> Result<()> {
    if f.dim() != 2 {
        return Err(Error::NotPlanar(f.dim()));
    }
    Ok(())
}

fn exponent_xy(f: &TropicalPolynomial, i: usize) -> (i64, i64) {
    let e = &f.terms()[i].exponent;
    (i64::from(e[0]), i64::from(e[1]))
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Solves `p·x = r` for two rows; `None` when singular.
fn solve2(p: [(Rat, Rat); 2], r: [Rat; 2]) -> Option<Point> {
    let det = &p[0].0 * &p[1].1 - &p[0].1 * &p[1].0;
    if det.is_zero() {
        return None;
    }
    let x = (&r[0] * &p[1].1 - &p[0].1 * &r[1]) / &det;
    let y = (&p[0].0 * &r[1] - &r[0] * &p[1].0) / &det;
    Some(Point(vec![x, y]))
}

/// Tie point of three affinely independent terms.
fn triple_tie(f: &TropicalPolynomial, i: usize, j: usize, k: usize) -> Option<Point> {
    let t = f.terms();
    let row = |a: usize, b: usize| {
        let (ea, eb) = (exponent_xy(f, a), exponent_xy(f, b));
        (rat(ea.0 - eb.0), rat(ea.1 - eb.1))
    };
    solve2(
        [row(i, j), row(i, k)],
        [
            &t[j].coefficient - &t[i].coefficient,
            &t[k].coefficient - &t[i].coefficient,
        ],
    )
}

fn collinear(f: &TropicalPolynomial) -> bool {
    let pts: Vec<(i64, i64)> = (0..f.len()).map(|i| exponent_xy(f, i)).collect();
    pts.len() < 3 || pts.iter().skip(2).all(|&p| cross(pts[0], pts[1], p) == 0)
}

/// Decides whether `tight` is a face of the lifted regular subdivision:
/// some `(x, w)` has `c_α + α·x = w` on `tight` and `> w` elsewhere.
fn is_lower_face(f: &TropicalPolynomial, tight: &[usize]) -> bool {
    let mut sys = LinearSystem::new(3);
    let mut strict = Vec::new();
    for (i, t) in f.terms().iter().enumerate() {
        let (a, b) = exponent_xy(f, i);
        if tight.contains(&i) {
            sys.add_eq(vec![rat(a), rat(b), -Rat::one()], -&t.coefficient)
                .expect("three columns");
        } else {
            strict.push(sys.inequalities().len());
            sys.add_le(vec![rat(-a), rat(-b), Rat::one()], t.coefficient.clone())
                .expect("three columns");
        }
    }
    let res = lp::maximize_margin(&sys, &strict);
    res.objective.is_some_and(|s| s.is_positive())
}

/// Maximal faces of the regular subdivision of the Newton polygon of `f`
/// induced by lifting each exponent `α` to height `c_α`.
pub fn regular_subdivision_2d(f: &TropicalPolynomial) -> Result<Vec<SubdivisionFace>> {
    require_planar(f)?;
    let len = f.len();
    if len == 1 {
        return Ok(vec![SubdivisionFace { tight_set: vec![0] }]);
    }
    let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
    if collinear(f) {
        for i in 0..len {
            for j in (i + 1)..len {
                let (ei, ej) = (exponent_xy(f, i), exponent_xy(f, j));
                let (dx, dy) = (rat(ei.0 - ej.0), rat(ei.1 - ej.1));
                let rhs = &f.terms()[j].coefficient - &f.terms()[i].coefficient;
                // Any point on the tie line has the same argmin for collinear supports.
                let x = if !dx.is_zero() {
                    Point(vec![rhs / dx, Rat::zero()])
                } else {
                    Point(vec![Rat::zero(), rhs / dy])
                };
                let (_, s) = f.argmin_indices(x.coords());
                if s.contains(&i) && s.contains(&j) {
                    candidates.insert(s);
                }
            }
        }
    } else {
        for_each_vertex(f, |_, s| {
            candidates.insert(s);
        });
    }
    Ok(candidates
        .into_iter()
        .filter(|s| is_lower_face(f, s))
        .map(|tight_set| SubdivisionFace { tight_set })
        .collect())
}

fn for_each_vertex(f: &TropicalPolynomial, mut visit: impl FnMut(Point, Vec<usize>)) {
    let len = f.len();
    for i in 0..len {
        for j in (i + 1)..len {
            for k in (j + 1)..len {
                if cross(exponent_xy(f, i), exponent_xy(f, j), exponent_xy(f, k)) == 0 {
                    continue;
                }
                let Some(x) = triple_tie(f, i, j, k) else {
                    continue;
                };
                let (_, s) = f.argmin_indices(x.coords());
                if s.contains(&i) && s.contains(&j) && s.contains(&k) {
                    visit(x, s);
                }
            }
        }
    }
}

/// Vertices of the planar tropical curve `T(f)`: points where the minimum is
/// attained by terms whose exponents are not collinear.
pub fn curve_vertices(f: &TropicalPolynomial) -> Result<Vec<Point>> {
    require_planar(f)?;
    let mut out = BTreeSet::new();
    for_each_vertex(f, |x, _| {
        out.insert(x);
    });
    Ok(out.into_iter().collect())
}

/// A one-dimensional cell of a planar curve: the set
/// `{x : normal·x = offset, lo ≤ direction·x ≤ hi}` with missing bounds
/// meaning unbounded.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CurveEdge {
    pub normal: (Rat, Rat),
    pub offset: Rat,
    pub direction: (Rat, Rat),
    /// Endpoint minimizing `direction·x`.
    pub start: Option<Point>,
    /// Endpoint maximizing `direction·x`.
    pub end: Option<Point>,
    /// Some point of the edge.
    pub anchor: Point,
}

/// The distinct one-dimensional cells of `T(f)` for a planar `f`.
pub fn curve_edges(f: &TropicalPolynomial, opts: &CellOptions) -> Result<Vec<CurveEdge>> {
    require_planar(f)?;
    let sys = PolySystem::new(2, vec![f.clone()])?;
    let mut edges = BTreeSet::new();
    for cell in enumerate_cells(&sys, opts)? {
        if cell.dimension != 1 {
            continue;
        }
        let (b, g) = cell.choice.0[0];
        let (eb, eg) = (exponent_xy(f, b), exponent_xy(f, g));
        let (mut nx, mut ny) = (rat(eb.0 - eg.0), rat(eb.1 - eg.1));
        let mut offset = &f.terms()[g].coefficient - &f.terms()[b].coefficient;
        let lead = if !nx.is_zero() { nx.clone() } else { ny.clone() };
        nx /= &lead;
        ny /= &lead;
        offset /= &lead;
        let dir = (-ny.clone(), nx.clone());
        let objective = [dir.0.clone(), dir.1.clone()];
        let neg = [-&dir.0, -&dir.1];
        let end = lp::maximize(&cell.system, &objective)?.witness;
        let start = lp::maximize(&cell.system, &neg)?.witness;
        let anchor = start.clone().or_else(|| end.clone()).unwrap_or_else(|| cell.witness.clone());
        edges.insert(CurveEdge {
            normal: (nx, ny),
            offset,
            direction: dir,
            start,
            end,
            anchor,
        });
    }
    Ok(dedupe_edges(edges))
}

/// Drops edges that describe the same set (anchors may differ for lines).
fn dedupe_edges(edges: BTreeSet<CurveEdge>) -> Vec<CurveEdge> {
    let mut out: Vec<CurveEdge> = Vec::new();
    for e in edges {
        let dup = out.iter().any(|o| {
            o.normal == e.normal && o.offset == e.offset && o.start == e.start && o.end == e.end
        });
        if !dup {
            out.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> TropicalPolynomial {
        TropicalPolynomial::from_pairs(1, &[(&[2], 0), (&[1], 0), (&[0], 1)]).unwrap()
    }

    fn line() -> TropicalPolynomial {
        TropicalPolynomial::from_pairs(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[0, 0], 0)]).unwrap()
    }

    fn single(f: TropicalPolynomial) -> PolySystem {
        PolySystem::new(f.dim(), vec![f]).unwrap()
    }

    #[test]
    fn structural_quadric_cells() {
        let cells = enumerate_cells(&single(h()), &CellOptions::default()).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].choice, CellChoice(vec![(0, 1)]));
        assert_eq!(cells[0].witness, Point(vec![rat(0)]));
        assert_eq!(cells[1].choice, CellChoice(vec![(1, 2)]));
        assert_eq!(cells[1].witness, Point(vec![rat(1)]));
        assert!(cells.iter().all(|c| c.dimension == 0 && cell_dimension(c) == 0));
    }

    #[test]
    fn single_monomial_has_no_cells() {
        let f = TropicalPolynomial::from_pairs(1, &[(&[1], 0)]).unwrap();
        assert!(enumerate_cells(&single(f), &CellOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn tropical_line_has_three_rays() {
        let cells = enumerate_cells(&single(line()), &CellOptions::default()).unwrap();
        assert_eq!(cells.len(), 3);
        for c in &cells {
            assert_eq!(c.dimension, 1);
            assert!(line().is_member(&c.witness).unwrap());
        }
    }

    #[test]
    fn witnesses() {
        let opts = CellOptions::default();
        let h2 = |i: usize| {
            let mut e2 = vec![0, 0];
            let mut e1 = vec![0, 0];
            e2[i] = 2;
            e1[i] = 1;
            TropicalPolynomial::new(
                2,
                vec![
                    crate::Monomial::new(e2, rat(0)),
                    crate::Monomial::new(e1, rat(0)),
                    crate::Monomial::new(vec![0, 0], rat(1)),
                ],
            )
            .unwrap()
        };
        let sys = PolySystem::new(2, vec![h2(0), h2(1)]).unwrap();
        let w = witness_or_empty(&sys, &opts).unwrap().unwrap();
        assert!(w.coords().iter().all(|c| *c == rat(0) || *c == rat(1)));

        // x = 0 and x = -1
        let a = TropicalPolynomial::from_pairs(1, &[(&[0], 0), (&[1], 0)]).unwrap();
        let b = TropicalPolynomial::from_pairs(1, &[(&[0], 0), (&[1], 1)]).unwrap();
        let sys = PolySystem::new(1, vec![a, b]).unwrap();
        assert_eq!(witness_or_empty(&sys, &opts).unwrap(), None);

        let w = witness_or_empty(&single(line()), &opts).unwrap().unwrap();
        assert!(line().is_member(&w).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_cells(&single(line()), &CellOptions::with_cap(2)).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 2 });
    }

    #[test]
    fn empty_system_is_whole_space() {
        let sys = PolySystem::new(3, vec![]).unwrap();
        let cells = enumerate_cells(&sys, &CellOptions::default()).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].dimension, 3);
    }

    #[test]
    fn subdivision_of_line_is_triangle() {
        let faces = regular_subdivision_2d(&line()).unwrap();
        assert_eq!(faces, vec![SubdivisionFace { tight_set: vec![0, 1, 2] }]);
    }

    #[test]
    fn subdivision_single_term() {
        let f = TropicalPolynomial::from_pairs(2, &[(&[1, 1], 3)]).unwrap();
        assert_eq!(
            regular_subdivision_2d(&f).unwrap(),
            vec![SubdivisionFace { tight_set: vec![0] }]
        );
    }

    #[test]
    fn subdivision_of_collinear_quadric() {
        // heights 1, 0, 0 at (0,0), (1,0), (2,0)
        let f = TropicalPolynomial::from_pairs(2, &[(&[2, 0], 0), (&[1, 0], 0), (&[0, 0], 1)])
            .unwrap();
        let faces = regular_subdivision_2d(&f).unwrap();
        assert_eq!(
            faces,
            vec![
                SubdivisionFace { tight_set: vec![0, 1] },
                SubdivisionFace { tight_set: vec![1, 2] },
            ]
        );
        assert!(curve_vertices(&f).unwrap().is_empty());
    }

    #[test]
    fn subdivision_requires_two_variables() {
        assert_eq!(regular_subdivision_2d(&h()), Err(Error::NotPlanar(1)));
    }

    #[test]
    fn line_geometry() {
        assert_eq!(curve_vertices(&line()).unwrap(), vec![Point(vec![rat(0), rat(0)])]);
        let edges = curve_edges(&line(), &CellOptions::default()).unwrap();
        assert_eq!(edges.len(), 3);
        for e in &edges {
            let bounded: Vec<&Point> = e.start.iter().chain(e.end.iter()).collect();
            assert_eq!(bounded, vec![&Point(vec![rat(0), rat(0)])]);
        }
    }

    #[test]
    fn conic_with_square_face() {
        // 0 ⊕ 0·x ⊕ 0·y ⊕ 0·xy: the unit square is a single face, one vertex
        let f = TropicalPolynomial::from_pairs(
            2,
            &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)],
        )
        .unwrap();
        assert_eq!(regular_subdivision_2d(&f).unwrap().len(), 1);
        assert_eq!(curve_vertices(&f).unwrap().len(), 1);
        // the diagonals give point cells, the four sides give rays
        let cells = enumerate_cells(&single(f.clone()), &CellOptions::default()).unwrap();
        let dims: Vec<i64> = cells.iter().map(|c| c.dimension).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 2);
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 4);
        let maximal = maximal_cells(&cells);
        assert_eq!(maximal.len(), 4);
    }
}
