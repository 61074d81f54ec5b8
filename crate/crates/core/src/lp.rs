//! Exact rational linear feasibility and optimization.
//!
//! Systems are closed: equalities `a·x = b` and inequalities `a·x ≤ b` over
//! free variables. Equalities are eliminated exactly (reduced row echelon
//! form); the remaining inequalities go to a dense two-phase simplex with
//! Bland's rule. Strict inequalities are never represented directly; use
//! [`maximize_margin`] instead.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Point;
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl Constraint {
    pub fn lhs_at(&self, x: &[Rat]) -> Rat {
        dot(&self.coeffs, x)
    }
}

fn dot(a: &[Rat], x: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (ai, xi) in a.iter().zip(x) {
        if !ai.is_zero() && !xi.is_zero() {
            s += ai * xi;
        }
    }
    s
}

/// Equalities and `≤`-inequalities over `Q^n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    n: usize,
    equalities: Vec<Constraint>,
    inequalities: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(n: usize) -> Self {
        LinearSystem {
            n,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    fn check_len(&self, coeffs: &[Rat]) -> Result<()> {
        if coeffs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: coeffs.len(),
            });
        }
        Ok(())
    }

    /// Adds `coeffs·x = rhs`.
    pub fn add_eq(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> Result<()> {
        self.check_len(&coeffs)?;
        self.equalities.push(Constraint { coeffs, rhs });
        Ok(())
    }

    /// Adds `coeffs·x ≤ rhs`.
    pub fn add_le(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> Result<()> {
        self.check_len(&coeffs)?;
        self.inequalities.push(Constraint { coeffs, rhs });
        Ok(())
    }

    /// Conjunction of both systems.
    pub fn merged(&self, other: &LinearSystem) -> Result<LinearSystem> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = self.clone();
        out.equalities.extend(other.equalities.iter().cloned());
        out.inequalities.extend(other.inequalities.iter().cloned());
        Ok(out)
    }

    /// Exact check of every constraint at `x`.
    pub fn is_satisfied_by(&self, x: &[Rat]) -> bool {
        x.len() == self.n
            && self.equalities.iter().all(|c| c.lhs_at(x) == c.rhs)
            && self.inequalities.iter().all(|c| c.lhs_at(x) <= c.rhs)
    }

    fn reduced(&self) -> Reduced {
        let mut r = Reduced::new(self.n);
        for c in &self.equalities {
            r.add_eq(c.coeffs.clone(), c.rhs.clone());
        }
        for c in &self.inequalities {
            r.add_le(c.coeffs.clone(), c.rhs.clone());
        }
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Feasible,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    /// Present iff `status == Feasible`.
    pub witness: Option<Point>,
    pub objective: Option<Rat>,
}

impl LpResult {
    fn infeasible() -> Self {
        LpResult {
            status: LpStatus::Infeasible,
            witness: None,
            objective: None,
        }
    }

    fn unbounded() -> Self {
        LpResult {
            status: LpStatus::Unbounded,
            witness: None,
            objective: None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == LpStatus::Feasible
    }
}

/// Decides feasibility and returns an exact witness.
pub fn feasible(sys: &LinearSystem) -> LpResult {
    sys.reduced().solve(None)
}

/// Maximizes `objective·x` over the system.
pub fn maximize(sys: &LinearSystem, objective: &[Rat]) -> Result<LpResult> {
    sys.check_len(objective)?;
    Ok(sys.reduced().solve(Some(objective)))
}

/// Maximizes `s ≤ 1` subject to the system with each selected inequality
/// tightened to `a·x ≤ b − s`. An optimum `s > 0` certifies a point where
/// all selected inequalities hold strictly; the status is infeasible when
/// the system itself is.
pub fn maximize_margin(sys: &LinearSystem, strict_idx: &[usize]) -> LpResult {
    let n = sys.n;
    let widen = |c: &Constraint, s: i64| {
        let mut a = c.coeffs.clone();
        a.push(Rat::from_integer(s.into()));
        a
    };
    let mut selected = vec![false; sys.inequalities.len()];
    for &i in strict_idx {
        selected[i] = true;
    }
    let mut r = Reduced::new(n + 1);
    for c in &sys.equalities {
        r.add_eq(widen(c, 0), c.rhs.clone());
    }
    for (c, &sel) in sys.inequalities.iter().zip(&selected) {
        r.add_le(widen(c, i64::from(sel)), c.rhs.clone());
    }
    let mut cap = vec![Rat::zero(); n + 1];
    cap[n] = Rat::one();
    r.add_le(cap.clone(), Rat::one());
    let mut res = r.solve(Some(&cap));
    // A negative optimum only satisfies the widened rows.
    if res.objective.as_ref().is_some_and(|s| s.is_negative()) {
        return LpResult::infeasible();
    }
    if let Some(w) = res.witness.as_mut() {
        w.0.truncate(n);
    }
    res
}

/// Dimension of the affine hull of the solution set, `-1` when infeasible.
///
/// Counts the rank of all equalities together with the inequalities that
/// are tight on the whole polyhedron (implicit equalities).
pub fn affine_dimension(sys: &LinearSystem) -> i64 {
    match implicit_equalities(sys) {
        None => -1,
        Some(implicit) => {
            let mut rows: Vec<Vec<Rat>> = sys.equalities.iter().map(|c| c.coeffs.clone()).collect();
            rows.extend(implicit.iter().map(|&i| sys.inequalities[i].coeffs.clone()));
            sys.n as i64 - rank(rows) as i64
        }
    }
}

/// Indices of inequalities that hold with equality on every solution, or
/// `None` when the system is infeasible.
pub fn implicit_equalities(sys: &LinearSystem) -> Option<Vec<usize>> {
    let first = feasible(sys);
    let w = first.witness?;
    let m = sys.inequalities.len();
    let mut slack = vec![false; m];
    mark_slack(sys, &w, &mut slack);
    let pending: Vec<usize> = (0..m).filter(|&i| !slack[i]).collect();
    if pending.is_empty() {
        return Some(Vec::new());
    }
    let all = maximize_margin(sys, &pending);
    if all.objective.as_ref().is_some_and(|s| s.is_positive()) {
        return Some(Vec::new());
    }
    let mut implicit = Vec::new();
    for i in pending {
        if slack[i] {
            continue;
        }
        let res = maximize_margin(sys, &[i]);
        match (&res.objective, &res.witness) {
            (Some(s), Some(w)) if s.is_positive() => mark_slack(sys, w, &mut slack),
            _ => implicit.push(i),
        }
    }
    Some(implicit)
}

fn mark_slack(sys: &LinearSystem, x: &Point, slack: &mut [bool]) {
    for (i, c) in sys.inequalities.iter().enumerate() {
        if !slack[i] && c.lhs_at(x.coords()) < c.rhs {
            slack[i] = true;
        }
    }
}

/// Rank of a set of rows by exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let (top, below) = rows.split_at_mut(r + 1);
        let prow = &top[r];
        for row in below {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot;
            for (x, a) in row[c..cols].iter_mut().zip(&prow[c..cols]) {
                if !a.is_zero() {
                    *x -= &f * a;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Incremental elimination state: equalities in reduced row echelon form and
/// inequalities rewritten over the non-pivot columns.
#[derive(Clone, Debug)]
pub(crate) struct Reduced {
    n: usize,
    pivots: Vec<PivotRow>,
    is_pivot: Vec<bool>,
    active: Vec<(Vec<Rat>, Rat)>,
    infeasible: bool,
}

#[derive(Clone, Debug)]
struct PivotRow {
    col: usize,
    row: Vec<Rat>,
    rhs: Rat,
}

fn axpy(target: &mut [Rat], f: &Rat, src: &[Rat]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= f * s;
        }
    }
}

impl Reduced {
    pub(crate) fn new(n: usize) -> Self {
        Reduced {
            n,
            pivots: Vec::new(),
            is_pivot: vec![false; n],
            active: Vec::new(),
            infeasible: false,
        }
    }

    pub(crate) fn is_infeasible(&self) -> bool {
        self.infeasible
    }

    /// Whether the equalities alone pin down a single point.
    pub(crate) fn is_point(&self) -> bool {
        self.pivots.len() == self.n
    }

    /// Whether `a·x ≤ b` holds on the whole (feasible) polyhedron.
    pub(crate) fn implies_le(&self, a: &[Rat], b: &Rat) -> bool {
        self.solve(Some(a)).objective.is_some_and(|v| v <= *b)
    }

    fn reduce(&self, a: &mut [Rat], b: &mut Rat) {
        for p in &self.pivots {
            if !a[p.col].is_zero() {
                let f = a[p.col].clone();
                axpy(a, &f, &p.row);
                *b -= &f * &p.rhs;
            }
        }
    }

    /// Adds `a·x = b`; returns whether the solution set may have changed.
    pub(crate) fn add_eq(&mut self, mut a: Vec<Rat>, mut b: Rat) -> bool {
        if self.infeasible {
            return true;
        }
        self.reduce(&mut a, &mut b);
        let Some(col) = a.iter().position(|v| !v.is_zero()) else {
            if !b.is_zero() {
                self.infeasible = true;
                return true;
            }
            return false;
        };
        let lead = a[col].clone();
        if !lead.is_one() {
            for v in a.iter_mut() {
                if !v.is_zero() {
                    *v /= &lead;
                }
            }
            b /= &lead;
        }
        for p in self.pivots.iter_mut() {
            if !p.row[col].is_zero() {
                let f = p.row[col].clone();
                axpy(&mut p.row, &f, &a);
                p.rhs -= &f * &b;
            }
        }
        let mut kept = Vec::with_capacity(self.active.len());
        for (mut row, mut rhs) in std::mem::take(&mut self.active) {
            if !row[col].is_zero() {
                let f = row[col].clone();
                axpy(&mut row, &f, &a);
                rhs -= &f * &b;
                if row.iter().all(Zero::is_zero) {
                    if rhs.is_negative() {
                        self.infeasible = true;
                    }
                    continue;
                }
            }
            kept.push((row, rhs));
        }
        self.active = kept;
        self.is_pivot[col] = true;
        self.pivots.push(PivotRow { col, row: a, rhs: b });
        true
    }

    /// Adds `a·x ≤ b`; returns whether the solution set may have changed.
    pub(crate) fn add_le(&mut self, mut a: Vec<Rat>, mut b: Rat) -> bool {
        if self.infeasible {
            return true;
        }
        self.reduce(&mut a, &mut b);
        let Some(lead) = a.iter().find(|v| !v.is_zero()).map(|v| v.abs()) else {
            if b.is_negative() {
                self.infeasible = true;
                return true;
            }
            return false;
        };
        if !lead.is_one() {
            for v in a.iter_mut() {
                if !v.is_zero() {
                    *v /= &lead;
                }
            }
            b /= &lead;
        }
        if let Some(existing) = self.active.iter_mut().find(|(row, _)| *row == a) {
            if b < existing.1 {
                existing.1 = b;
                return true;
            }
            return false;
        }
        self.active.push((a, b));
        true
    }

    /// Solution of the equalities with every free variable set from `free`.
    fn lift(&self, free: &[Rat]) -> Vec<Rat> {
        let mut x = free.to_vec();
        for p in &self.pivots {
            let mut v = p.rhs.clone();
            for (j, coef) in p.row.iter().enumerate() {
                if j != p.col && !coef.is_zero() {
                    v -= coef * &free[j];
                }
            }
            x[p.col] = v;
        }
        x
    }

    /// Solves with an optional maximization objective.
    pub(crate) fn solve(&self, objective: Option<&[Rat]>) -> LpResult {
        if self.infeasible {
            return LpResult::infeasible();
        }
        let free_cols: Vec<usize> = (0..self.n).filter(|&j| !self.is_pivot[j]).collect();
        // Objective restricted to the free columns after substituting pivots.
        let (obj_free, obj_const) = match objective {
            Some(c) => {
                let mut cf: Vec<Rat> = free_cols.iter().map(|&j| c[j].clone()).collect();
                let mut k = Rat::zero();
                for p in &self.pivots {
                    let cp = &c[p.col];
                    if cp.is_zero() {
                        continue;
                    }
                    k += cp * &p.rhs;
                    for (slot, &j) in cf.iter_mut().zip(&free_cols) {
                        if !p.row[j].is_zero() {
                            *slot -= cp * &p.row[j];
                        }
                    }
                }
                (cf, k)
            }
            None => (vec![Rat::zero(); free_cols.len()], Rat::zero()),
        };
        let g: Vec<Vec<Rat>> = self
            .active
            .iter()
            .map(|(row, _)| free_cols.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let h: Vec<Rat> = self.active.iter().map(|(_, b)| b.clone()).collect();

        let outcome = if g.is_empty() {
            if obj_free.iter().all(Zero::is_zero) {
                Outcome::Optimal(vec![Rat::zero(); free_cols.len()])
            } else {
                Outcome::Unbounded
            }
        } else {
            simplex_free(&g, &h, &obj_free)
        };
        match outcome {
            Outcome::Infeasible => LpResult::infeasible(),
            Outcome::Unbounded => LpResult::unbounded(),
            Outcome::Optimal(y) => {
                let mut full = vec![Rat::zero(); self.n];
                for (v, &j) in y.into_iter().zip(&free_cols) {
                    full[j] = v;
                }
                let x = self.lift(&full);
                let value = objective.map(|_| {
                    obj_const + dot(&obj_free, &free_cols.iter().map(|&j| x[j].clone()).collect::<Vec<_>>())
                });
                LpResult {
                    status: LpStatus::Feasible,
                    witness: Some(Point(x)),
                    objective: value,
                }
            }
        }
    }
}

enum Outcome {
    Optimal(Vec<Rat>),
    Infeasible,
    Unbounded,
}

/// `max c·y` s.t. `G y ≤ h`, `y` free.
fn simplex_free(g: &[Vec<Rat>], h: &[Rat], c: &[Rat]) -> Outcome {
    let k = g.len();
    let d = c.len();
    let neg_rows: Vec<usize> = (0..k).filter(|&i| h[i].is_negative()).collect();
    let n_art = neg_rows.len();
    let ncols = 2 * d + k + n_art;
    let mut rows = Vec::with_capacity(k);
    let mut basis = Vec::with_capacity(k);
    let mut art = 0;
    for i in 0..k {
        let mut row = vec![Rat::zero(); ncols + 1];
        let sign = if h[i].is_negative() { -Rat::one() } else { Rat::one() };
        for j in 0..d {
            if !g[i][j].is_zero() {
                row[j] = &sign * &g[i][j];
                row[d + j] = -&row[j];
            }
        }
        row[2 * d + i] = sign.clone();
        row[ncols] = &sign * &h[i];
        if h[i].is_negative() {
            let col = 2 * d + k + art;
            row[col] = Rat::one();
            basis.push(col);
            art += 1;
        } else {
            basis.push(2 * d + i);
        }
        rows.push(row);
    }
    let mut tab = Tableau { rows, basis, ncols };

    let first_art = 2 * d + k;
    if n_art > 0 {
        let mut cost = vec![Rat::zero(); ncols];
        for c in cost.iter_mut().skip(first_art) {
            *c = -Rat::one();
        }
        let allowed = vec![true; ncols];
        // Phase one is bounded above by zero.
        let _ = tab.run(&cost, &allowed);
        let infeasibility: Rat = tab
            .rows
            .iter()
            .zip(&tab.basis)
            .filter(|(_, &b)| b >= first_art)
            .map(|(r, _)| r[ncols].clone())
            .sum();
        if infeasibility.is_positive() {
            return Outcome::Infeasible;
        }
        // Drive zero-valued artificials out of the basis.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_art {
                match (0..first_art).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![Rat::zero(); ncols];
    for j in 0..d {
        cost[j] = c[j].clone();
        cost[d + j] = -&c[j];
    }
    let mut allowed = vec![true; ncols];
    for a in allowed.iter_mut().skip(first_art) {
        *a = false;
    }
    if !tab.run(&cost, &allowed) {
        return Outcome::Unbounded;
    }
    let mut vals = vec![Rat::zero(); ncols];
    for (r, &b) in tab.rows.iter().zip(&tab.basis) {
        vals[b] = r[ncols].clone();
    }
    Outcome::Optimal((0..d).map(|j| &vals[j] - &vals[d + j]).collect())
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, q: usize) {
        let p = self.rows[r][q].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let (before, rest) = self.rows.split_at_mut(r);
        let (prow, after) = rest.split_first_mut().expect("pivot row");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if !row[q].is_zero() {
                let f = row[q].clone();
                axpy(row, &f, prow);
            }
        }
        self.basis[r] = q;
    }

    /// Maximizes `cost` from the current basic feasible solution with Bland's
    /// rule. Returns `false` when unbounded.
    fn run(&mut self, cost: &[Rat], allowed: &[bool]) -> bool {
        let nc = self.ncols;
        let mut red: Vec<Rat> = cost.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !cost[b].is_zero() {
                let cb = cost[b].clone();
                axpy(&mut red, &cb, &row[..nc]);
            }
        }
        loop {
            let Some(q) = (0..nc).find(|&j| allowed[j] && red[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[q].is_positive() {
                    continue;
                }
                let ratio = &row[nc] / &row[q];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, q);
            let f = red[q].clone();
            axpy(&mut red, &f, &self.rows[r][..nc]);
        }
    }
}
