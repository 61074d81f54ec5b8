//! 3-SAT instances encoded as systems of tropical polynomials.
//!
//! Boolean values live on the coordinates as `False = 0`, `True = 1`. The
//! structural polynomial `0·x² ⊕ 0·x ⊕ 1` pins each coordinate to `{0, 1}`,
//! and every clause becomes one or more polynomials whose hypersurfaces
//! contain exactly the 0/1 points satisfying it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{Exponent, Monomial, PolySystem, TropicalPolynomial};
use crate::rational::rat;

/// Largest variable count accepted by [`brute_force_count`].
pub const MAX_BRUTE_FORCE_VARS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// Signed DIMACS form.
    pub fn from_dimacs(v: i64) -> Self {
        Literal {
            var: v.unsigned_abs() as usize,
            positive: v > 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

pub type Clause = Vec<Literal>;

/// A CNF formula with clauses of at most three distinct variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Removes repeated literals and drops tautological clauses, then checks
    /// variable ranges and clause sizes.
    pub fn new(n_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for (idx, clause) in clauses.into_iter().enumerate() {
            let mut lits: Clause = Vec::with_capacity(clause.len());
            let mut tautology = false;
            for lit in clause {
                if lit.var == 0 || lit.var > n_vars {
                    return Err(Error::VariableOutOfRange { var: lit.var, n_vars });
                }
                match lits.iter().find(|l| l.var == lit.var) {
                    Some(l) if l.positive != lit.positive => tautology = true,
                    Some(_) => {}
                    None => lits.push(lit),
                }
            }
            if tautology {
                continue;
            }
            if lits.len() > 3 {
                return Err(Error::ClauseTooLarge { clause: idx + 1, len: lits.len() });
            }
            out.push(lits);
        }
        Ok(CnfFormula { n_vars, clauses: out })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Clauses whose literals are all positive and number three.
    pub fn count_three_positive(&self) -> usize {
        self.clauses.iter().filter(|c| needs_aux(c)).count()
    }

    /// `assignment` bit `i` is the value of variable `i + 1`.
    pub fn is_satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|l| (assignment >> (l.var - 1) & 1 == 1) == l.positive)
        })
    }

    /// Parses DIMACS CNF. `c` lines are comments; a `%` line ends the input.
    /// Without a `p cnf` header the variable count is the largest index seen.
    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<usize> = None;
        let mut clauses = Vec::new();
        let mut current: Clause = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line_no = ln + 1;
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            if trimmed.starts_with('%') {
                break;
            }
            if trimmed.starts_with('p') {
                let col = line.len() - trimmed.len() + 1;
                if header.is_some() {
                    return Err(Error::parse(line_no, col, "duplicate problem line"));
                }
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                    return Err(Error::parse(line_no, col, "expected `p cnf <vars> <clauses>`"));
                }
                let n = fields[2]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, col, "bad variable count"))?;
                fields[3]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, col, "bad clause count"))?;
                header = Some(n);
                continue;
            }
            for (col, tok) in tokens(line) {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(line_no, col, format!("expected an integer literal, found `{tok}`")))?;
                if v == 0 {
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                let lit = Literal::from_dimacs(v);
                if let Some(n) = header {
                    if lit.var > n {
                        return Err(Error::parse(
                            line_no,
                            col,
                            format!("variable {} exceeds the declared count {n}", lit.var),
                        ));
                    }
                }
                current.push(lit);
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        let n_vars = header.unwrap_or_else(|| {
            clauses.iter().flatten().map(|l| l.var).max().unwrap_or(0)
        });
        CnfFormula::new(n_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&l.to_dimacs().to_string());
                s.push(' ');
            }
            s.push_str("0\n");
        }
        s
    }
}

impl FromStr for CnfFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CnfFormula::from_dimacs(s)
    }
}

/// Whitespace-separated tokens with 1-based byte columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
}

/// Exact number of satisfying assignments.
pub fn brute_force_count(c: &CnfFormula) -> Result<u64> {
    if c.n_vars > MAX_BRUTE_FORCE_VARS {
        return Err(Error::TooManyVariables {
            n_vars: c.n_vars,
            max: MAX_BRUTE_FORCE_VARS,
        });
    }
    let masks: Vec<(u64, u64)> = c
        .clauses
        .iter()
        .map(|cl| {
            cl.iter().fold((0, 0), |(p, n), l| {
                let bit = 1u64 << (l.var - 1);
                if l.positive {
                    (p | bit, n)
                } else {
                    (p, n | bit)
                }
            })
        })
        .collect();
    let count = (0u64..1 << c.n_vars)
        .filter(|&a| masks.iter().all(|&(p, n)| a & p != 0 || !a & n != 0))
        .count();
    Ok(count as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Intersection,
    Consistency,
    Connectivity,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Intersection => "intersection",
            Variant::Consistency => "consistency",
            Variant::Connectivity => "connectivity",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "intersection" => Ok(Variant::Intersection),
            "consistency" => Ok(Variant::Consistency),
            "connectivity" => Ok(Variant::Connectivity),
            _ => Err(format!("unknown variant `{s}`")),
        }
    }
}

/// An auxiliary coordinate introduced for a clause with three positive literals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuxVar {
    /// 1-based clause index within the normalized formula.
    pub clause: usize,
    /// 0-based coordinate.
    pub coordinate: usize,
}

/// Where each variable lives. Original variable `i` is coordinate `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMap {
    pub n_original: usize,
    pub aux: Vec<AuxVar>,
    /// The extra coordinate of the consistency and connectivity variants.
    pub extra: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Encoding {
    pub variant: Variant,
    pub system: PolySystem,
    pub total_vars: usize,
    pub var_map: VarMap,
}

fn needs_aux(c: &Clause) -> bool {
    c.len() == 3 && c.iter().all(|l| l.positive)
}

fn unit(d: usize, coord: usize) -> Exponent {
    let mut e = vec![0; d];
    e[coord] = 1;
    e
}

/// `0·x_coord ⊕ c`
fn factor(d: usize, coord: usize, c: i64) -> TropicalPolynomial {
    TropicalPolynomial::new(
        d,
        vec![
            Monomial::new(unit(d, coord), rat(0)),
            Monomial::new(vec![0; d], rat(c)),
        ],
    )
    .expect("two distinct exponents")
}

fn product(fs: &[TropicalPolynomial]) -> TropicalPolynomial {
    TropicalPolynomial::product(fs).expect("factors share a dimension")
}

/// `0·x² ⊕ 0·x ⊕ 1`, with hypersurface `{0, 1}`.
pub fn structural_quadric(d: usize, coord: usize) -> TropicalPolynomial {
    product(&[factor(d, coord, 1), factor(d, coord, 0)])
}

/// `0·x³ ⊕ 0·x² ⊕ 1·x ⊕ 3`, with hypersurface `{0, 1, 2}`.
pub fn structural_cubic(d: usize, coord: usize) -> TropicalPolynomial {
    product(&[factor(d, coord, 1), factor(d, coord, 0), factor(d, coord, 2)])
}

/// `0·x_i² ⊕ 0·x_i ⊕ 1 ⊕ 1·x_extra`
pub fn consistency_quadric(d: usize, coord: usize, extra: usize) -> TropicalPolynomial {
    let mut sq = vec![0; d];
    sq[coord] = 2;
    TropicalPolynomial::new(
        d,
        vec![
            Monomial::new(sq, rat(0)),
            Monomial::new(unit(d, coord), rat(0)),
            Monomial::new(vec![0; d], rat(1)),
            Monomial::new(unit(d, extra), rat(1)),
        ],
    )
    .expect("distinct exponents")
}

/// Clause with at most one positive literal: `(0·x_p ⊕ 1) ⊙ (⊕ 0·x_q ⊕ 0)` over
/// the negated `q`, either factor omitted when it has no variables. The empty
/// clause becomes the constant `0`, whose hypersurface is empty.
fn clause_poly(d: usize, pos: Option<usize>, negs: &[usize]) -> TropicalPolynomial {
    let mut factors = Vec::new();
    if let Some(p) = pos {
        factors.push(factor(d, p, 1));
    }
    if !negs.is_empty() {
        let mut terms: Vec<Monomial> = negs.iter().map(|&q| Monomial::new(unit(d, q), rat(0))).collect();
        terms.push(Monomial::new(vec![0; d], rat(0)));
        factors.push(TropicalPolynomial::new(d, terms).expect("distinct variables"));
    }
    if factors.is_empty() {
        return TropicalPolynomial::constant(d, rat(0));
    }
    product(&factors)
}

/// `0·x_a x_b ⊕ 1·x_a ⊕ 1·x_b ⊕ 0·x_c ⊕ 0·x_c² ⊕ 1` for `y_a ∨ y_b ∨ ¬y_c`.
fn two_positive_one_negative(d: usize, a: usize, b: usize, c: usize) -> TropicalPolynomial {
    let mut ab = vec![0; d];
    ab[a] = 1;
    ab[b] = 1;
    let mut cc = vec![0; d];
    cc[c] = 2;
    TropicalPolynomial::new(
        d,
        vec![
            Monomial::new(ab, rat(0)),
            Monomial::new(unit(d, a), rat(1)),
            Monomial::new(unit(d, b), rat(1)),
            Monomial::new(unit(d, c), rat(0)),
            Monomial::new(cc, rat(0)),
            Monomial::new(vec![0; d], rat(1)),
        ],
    )
    .expect("distinct exponents")
}

/// Polynomials for one clause given as (positive, negative) coordinate lists.
fn clause_polys(d: usize, pos: &[usize], neg: &[usize]) -> Vec<TropicalPolynomial> {
    match (pos, neg) {
        ([], _) => vec![clause_poly(d, None, neg)],
        ([p], _) => vec![clause_poly(d, Some(*p), neg)],
        ([a, b], []) => vec![product(&[factor(d, *a, 1), factor(d, *b, 1)])],
        ([a, b], [c]) => vec![two_positive_one_negative(d, *a, *b, *c)],
        _ => unreachable!("clauses with three positive literals are split first"),
    }
}

/// Clause polynomials over `d ≥ n'` coordinates, plus the auxiliary variables.
fn clause_system(c: &CnfFormula, d: usize) -> (Vec<TropicalPolynomial>, Vec<AuxVar>) {
    let mut polys = Vec::new();
    let mut aux = Vec::new();
    for (idx, clause) in c.clauses.iter().enumerate() {
        if needs_aux(clause) {
            // y1 ∨ y2 ∨ y3 becomes (y1 ∨ y2 ∨ ¬z) ∧ (y3 ∨ z) ∧ (¬y3 ∨ ¬z), forcing z = ¬y3.
            let z = c.n_vars + aux.len();
            aux.push(AuxVar { clause: idx + 1, coordinate: z });
            let (y1, y2, y3) = (clause[0].var - 1, clause[1].var - 1, clause[2].var - 1);
            polys.extend(clause_polys(d, &[y1, y2], &[z]));
            polys.extend(clause_polys(d, &[y3, z], &[]));
            polys.extend(clause_polys(d, &[], &[y3, z]));
            continue;
        }
        let pos: Vec<usize> = clause.iter().filter(|l| l.positive).map(|l| l.var - 1).collect();
        let neg: Vec<usize> = clause.iter().filter(|l| !l.positive).map(|l| l.var - 1).collect();
        polys.extend(clause_polys(d, &pos, &neg));
    }
    (polys, aux)
}

fn system(polys: Vec<TropicalPolynomial>, d: usize) -> PolySystem {
    PolySystem::new(d, polys).expect("all polynomials built in the same dimension")
}

/// Prevariety is `{0,1}`-valued and in bijection with the satisfying assignments.
pub fn encode_intersection(c: &CnfFormula) -> Encoding {
    let d = c.n_vars + c.count_three_positive();
    let (clauses, aux) = clause_system(c, d);
    let mut polys: Vec<TropicalPolynomial> = (0..d).map(|i| structural_quadric(d, i)).collect();
    polys.extend(clauses);
    Encoding {
        variant: Variant::Intersection,
        system: system(polys, d),
        total_vars: d,
        var_map: VarMap { n_original: c.n_vars, aux, extra: None },
    }
}

/// One upward ray over each satisfying point; empty iff unsatisfiable.
pub fn encode_consistency(c: &CnfFormula) -> Encoding {
    let n_prime = c.n_vars + c.count_three_positive();
    let d = n_prime + 1;
    let extra = n_prime;
    let (clauses, aux) = clause_system(c, d);
    let mut polys = Vec::new();
    for i in 0..n_prime {
        polys.push(structural_quadric(d, i));
        polys.push(consistency_quadric(d, i, extra));
    }
    polys.extend(clauses);
    Encoding {
        variant: Variant::Consistency,
        system: system(polys, d),
        total_vars: d,
        var_map: VarMap { n_original: c.n_vars, aux, extra: Some(extra) },
    }
}

/// Satisfying points at height 0 on the extra coordinate plus the isolated
/// anchor `(2, …, 2)`; connected iff unsatisfiable.
pub fn encode_connectivity(c: &CnfFormula) -> Encoding {
    let n_prime = c.n_vars + c.count_three_positive();
    let d = n_prime + 1;
    let e = n_prime;
    let (clauses, aux) = clause_system(c, d);
    let mut polys: Vec<TropicalPolynomial> = (0..d).map(|i| structural_cubic(d, i)).collect();
    // x_e ∈ {0, 2}
    polys.push(product(&[factor(d, e, 0), factor(d, e, 2)]));
    for i in 0..n_prime {
        let toward_extra = TropicalPolynomial::new(
            d,
            vec![Monomial::new(unit(d, i), rat(0)), Monomial::new(unit(d, e), rat(0))],
        )
        .expect("distinct exponents");
        // x_i ∈ {0, 1} or x_i = x_e
        polys.push(product(&[factor(d, i, 1), factor(d, i, 0), toward_extra]));
        // x_e = 0 or x_i = 2
        polys.push(product(&[factor(d, e, 0), factor(d, i, 2)]));
    }
    let lift = factor(d, e, 2);
    for p in clauses {
        polys.push(p.trop_mul(&lift).expect("same dimension"));
    }
    Encoding {
        variant: Variant::Connectivity,
        system: system(polys, d),
        total_vars: d,
        var_map: VarMap { n_original: c.n_vars, aux, extra: Some(e) },
    }
}

pub fn encode(c: &CnfFormula, variant: Variant) -> Encoding {
    match variant {
        Variant::Intersection => encode_intersection(c),
        Variant::Consistency => encode_consistency(c),
        Variant::Connectivity => encode_connectivity(c),
    }
}
