//! Tropical linear algebra: determinants as assignment problems, tropical
//! singularity, and the consistency test for linear systems.

use std::fmt;

use num_traits::Zero;

use crate::cells::CellOptions;
use crate::error::{Error, Result};
use crate::poly::{PolySystem, TropicalPolynomial};
use crate::rational::{rat, ExtRational, Rat};
use crate::topology;

/// A `rows × cols` matrix over `Q ∪ {+∞}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExtRational>,
}

impl TropicalMatrix {
    pub fn from_rows(rows: Vec<Vec<ExtRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(TropicalMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer entries, with `None` for `+∞`.
    pub fn from_ints(rows: &[Vec<Option<i64>>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|e| e.map_or(ExtRational::Infinity, ExtRational::from_int))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExtRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        TropicalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Square submatrix on the given columns (all rows).
    pub fn column_submatrix(&self, cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        TropicalMatrix {
            rows: self.rows,
            cols: cols.len(),
            entries,
        }
    }

    fn check_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }
}

impl fmt::Display for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Min-cost perfect assignment for a square finite cost matrix.
/// Returns `assign[row] = col`.
fn hungarian(cost: &[Vec<Rat>]) -> Vec<usize> {
    let n = cost.len();
    let mut u = vec![Rat::zero(); n + 1];
    let mut v = vec![Rat::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<Rat>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<Rat> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = &cost[i0 - 1][j - 1] - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("set above");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column remains");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0usize; n];
    for j in 1..=n {
        if p[j] != 0 {
            assign[p[j] - 1] = j - 1;
        }
    }
    assign
}

/// An optimal permutation of a square matrix, or `None` when every
/// permutation meets a `+∞` entry.
pub fn optimal_permutation(a: &TropicalMatrix) -> Result<Option<Vec<usize>>> {
    a.check_square()?;
    let k = a.rows;
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    let finite: Vec<&Rat> = a.entries.iter().filter_map(ExtRational::finite).collect();
    if finite.is_empty() {
        return Ok(None);
    }
    let max = finite.iter().max().copied().cloned().expect("nonempty");
    let min = finite.iter().min().copied().cloned().expect("nonempty");
    // Any permutation through a forbidden cell costs more than every finite one.
    let forbidden = rat(k as i64) * &max - rat(k as i64 - 1) * &min + rat(1);
    let cost: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| a.get(i, j).finite().cloned().unwrap_or_else(|| forbidden.clone()))
                .collect()
        })
        .collect();
    let perm = hungarian(&cost);
    if perm.iter().enumerate().any(|(i, &j)| !a.get(i, j).is_finite()) {
        return Ok(None);
    }
    Ok(Some(perm))
}

/// `min_σ Σ_i a_{i,σ(i)}`; `+∞` iff no permutation avoids the `+∞` entries.
pub fn trop_det(a: &TropicalMatrix) -> Result<ExtRational> {
    Ok(match optimal_permutation(a)? {
        Some(perm) => perm_cost(a, &perm),
        None => ExtRational::Infinity,
    })
}

fn perm_cost(a: &TropicalMatrix, perm: &[usize]) -> ExtRational {
    perm.iter()
        .enumerate()
        .fold(ExtRational::zero(), |acc, (i, &j)| acc + a.get(i, j).clone())
}

/// Whether the tropical determinant is attained by at least two permutations.
///
/// Takes one optimal permutation `σ`, forbids each cell `(j, σ(j))` in turn
/// and recomputes; the matrix is singular iff some recomputation still
/// reaches the optimum. A matrix whose determinant is `+∞` counts as singular.
pub fn is_singular(a: &TropicalMatrix) -> Result<bool> {
    let Some(perm) = optimal_permutation(a)? else {
        return Ok(true);
    };
    let det = perm_cost(a, &perm);
    let mut probe = a.clone();
    for (j, &sj) in perm.iter().enumerate() {
        let saved = probe.get(j, sj).clone();
        probe.set(j, sj, ExtRational::Infinity);
        if trop_det(&probe)? == det {
            return Ok(true);
        }
        probe.set(j, sj, saved);
    }
    Ok(false)
}

/// `m` linear tropical polynomials in `n` variables as an `m × (n+1)`
/// coefficient matrix; column `n` holds the constant terms and absent terms
/// are `+∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearTropSystem {
    n: usize,
    coefficients: TropicalMatrix,
}

impl LinearTropSystem {
    pub fn from_matrix(coefficients: TropicalMatrix) -> Result<Self> {
        if coefficients.cols == 0 {
            return Err(Error::EmptySupport);
        }
        for i in 0..coefficients.rows {
            if (0..coefficients.cols).all(|j| !coefficients.get(i, j).is_finite()) {
                return Err(Error::EmptyRow(i));
            }
        }
        Ok(LinearTropSystem {
            n: coefficients.cols - 1,
            coefficients,
        })
    }

    pub fn from_polys(sys: &PolySystem) -> Result<Self> {
        let n = sys.dim();
        let mut rows = Vec::with_capacity(sys.len());
        for (idx, f) in sys.polys().iter().enumerate() {
            if f.degree() > 1 {
                return Err(Error::NotLinear {
                    index: idx,
                    degree: f.degree(),
                });
            }
            let mut row = vec![ExtRational::Infinity; n + 1];
            for t in f.terms() {
                let col = t.exponent.iter().position(|&e| e == 1).unwrap_or(n);
                row[col] = ExtRational::Finite(t.coefficient.clone());
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Ok(LinearTropSystem {
                n,
                coefficients: TropicalMatrix {
                    rows: 0,
                    cols: n + 1,
                    entries: Vec::new(),
                },
            });
        }
        Self::from_matrix(TropicalMatrix::from_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.coefficients.rows
    }

    pub fn coefficients(&self) -> &TropicalMatrix {
        &self.coefficients
    }

    pub fn to_polys(&self) -> PolySystem {
        let n = self.n;
        let polys = (0..self.m())
            .map(|i| {
                let terms = (0..=n)
                    .map(|j| {
                        let mut e = vec![0u32; n];
                        if j < n {
                            e[j] = 1;
                        }
                        (e, self.coefficients.get(i, j).clone())
                    })
                    .collect();
                TropicalPolynomial::from_ext_terms(n, terms).expect("rows have a finite entry")
            })
            .collect();
        PolySystem::new(n, polys).expect("shared dimension")
    }

    /// First `m`-subset of columns (lexicographic) whose submatrix is
    /// tropically singular.
    pub fn singular_minor(&self) -> Result<Option<Vec<usize>>> {
        let m = self.m();
        for cols in combinations(self.n + 1, m) {
            if is_singular(&self.coefficients.column_submatrix(&cols))? {
                return Ok(Some(cols));
            }
        }
        Ok(None)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Whether the linear prevariety is a linear tropical variety of
/// codimension `m`.
///
/// `m > n+1` is never consistent; `m = n+1` reduces to nonemptiness; for
/// `m ≤ n` every `m × m` column submatrix must be tropically nonsingular.
pub fn m_consistency_linear(sys: &LinearTropSystem, opts: &CellOptions) -> Result<bool> {
    let (m, n) = (sys.m(), sys.n());
    if m > n + 1 {
        return Ok(false);
    }
    if m == n + 1 {
        return Ok(topology::intersect_nonempty(&sys.to_polys(), opts)?.is_some());
    }
    Ok(sys.singular_minor()?.is_none())
}
