use std::collections::BTreeMap;

use proptest::prelude::*;

use tropical::cells::{self, CellOptions};
use tropical::format;
use tropical::gadgets::{self, CnfFormula, Literal};
use tropical::linalg::{self, LinearTropSystem, TropicalMatrix};
use tropical::lp::{self, LinearSystem};
use tropical::rational::{rat, ratio};
use tropical::topology;
use tropical::{ExtRational, Point, PolySystem, Rat, TropicalPolynomial};

fn opts() -> CellOptions {
    CellOptions::default()
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

fn point(n: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec((-6i64..=6, 1i64..=2).prop_map(|(p, q)| ratio(p, q)), n).prop_map(Point)
}

/// Polynomial in `n` variables with total degree at most `deg` and integer
/// coefficients, so ties are frequent on a half-integer grid.
fn poly(n: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = TropicalPolynomial> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), -3i64..=3), 1..=max_terms).prop_map(
        move |terms| {
            let mut map: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
            for (mut e, c) in terms {
                while e.iter().sum::<u32>() > deg {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                map.entry(e).or_insert_with(|| rat(c));
            }
            let terms = map.into_iter().map(|(e, c)| (e, ExtRational::Finite(c))).collect();
            TropicalPolynomial::from_ext_terms(n, terms).unwrap()
        },
    )
}

fn with_dim<T: std::fmt::Debug>(
    max_n: usize,
    f: impl Fn(usize) -> BoxedStrategy<T> + 'static,
) -> impl Strategy<Value = (usize, T)> {
    (1..=max_n).prop_flat_map(move |n| (Just(n), f(n)))
}

// ---------- polynomials ----------

proptest! {
    #[test]
    fn product_evaluates_to_sum(
        (f, g, x) in with_dim(3, |n| (poly(n, 3, 6), poly(n, 3, 6), point(n)).boxed())
            .prop_map(|(_, t)| t)
    ) {
        let fg = f.trop_mul(&g).unwrap();
        prop_assert_eq!(fg.eval(&x).unwrap().value, f.eval(&x).unwrap().value + g.eval(&x).unwrap().value);
        prop_assert_eq!(
            fg.is_member(&x).unwrap(),
            f.is_member(&x).unwrap() || g.is_member(&x).unwrap()
        );
    }

    #[test]
    fn eval_ignores_term_order(
        (f, x, seed) in with_dim(3, |n| (poly(n, 3, 7), point(n), any::<u64>()).boxed()).prop_map(|(_, t)| t)
    ) {
        let mut terms: Vec<_> = f
            .terms()
            .iter()
            .map(|t| (t.exponent.clone(), ExtRational::Finite(t.coefficient.clone())))
            .collect();
        let len = terms.len();
        for i in 0..len {
            let j = (seed as usize).wrapping_mul(i + 7) % len;
            terms.swap(i, j);
        }
        let g = TropicalPolynomial::from_ext_terms(f.dim(), terms).unwrap();
        prop_assert_eq!(f.eval(&x).unwrap(), g.eval(&x).unwrap());
    }

    #[test]
    fn scaling_shifts_value_only(
        (f, x, c) in with_dim(3, |n| (poly(n, 3, 6), point(n), small_rat()).boxed()).prop_map(|(_, t)| t)
    ) {
        let g = f.scale(&c);
        let (ef, eg) = (f.eval(&x).unwrap(), g.eval(&x).unwrap());
        prop_assert_eq!(eg.value, ef.value + &c);
        prop_assert_eq!(eg.argmin, ef.argmin);
        prop_assert_eq!(g.is_member(&x).unwrap(), f.is_member(&x).unwrap());
    }

    #[test]
    fn system_format_roundtrip(
        (_, polys) in with_dim(3, |n| prop::collection::vec(poly(n, 3, 5), 1..4).boxed())
    ) {
        let sys = PolySystem::from_polys(polys).unwrap();
        let text = format::write_system(&sys);
        prop_assert_eq!(format::parse_system(&text).unwrap(), sys);
    }
}

// ---------- linear programming ----------

#[derive(Clone, Debug)]
struct RawSystem {
    n: usize,
    eqs: Vec<(Vec<i64>, i64)>,
    les: Vec<(Vec<i64>, i64)>,
}

impl RawSystem {
    fn build(&self) -> LinearSystem {
        let mut s = LinearSystem::new(self.n);
        let conv = |v: &[i64]| v.iter().map(|&c| rat(c)).collect::<Vec<_>>();
        for (a, b) in &self.eqs {
            s.add_eq(conv(a), rat(*b)).unwrap();
        }
        for (a, b) in &self.les {
            s.add_le(conv(a), rat(*b)).unwrap();
        }
        s
    }
}

fn raw_system() -> impl Strategy<Value = RawSystem> {
    (1usize..=3).prop_flat_map(|n| {
        let row = (prop::collection::vec(-3i64..=3, n), -5i64..=5);
        (
            Just(n),
            prop::collection::vec(row.clone(), 0..=2),
            prop::collection::vec(row, 0..=5),
        )
            .prop_map(|(n, eqs, les)| RawSystem { n, eqs, les })
    })
}

/// Feasibility by Fourier-Motzkin elimination.
fn fourier_motzkin(sys: &RawSystem) -> bool {
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (a, b) in &sys.eqs {
        rows.push((a.iter().map(|&c| rat(c)).collect(), rat(*b)));
        rows.push((a.iter().map(|&c| rat(-c)).collect(), rat(-b)));
    }
    for (a, b) in &sys.les {
        rows.push((a.iter().map(|&c| rat(c)).collect(), rat(*b)));
    }
    for j in 0..sys.n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            let c = r.0[j].clone();
            if c > rat(0) {
                pos.push(r);
            } else if c < rat(0) {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let (s, t) = (-&na[j], pa[j].clone());
                let a: Vec<Rat> = pa.iter().zip(na).map(|(x, y)| x * &s + y * &t).collect();
                rest.push((a, pb * &s + nb * &t));
            }
        }
        rows = rest;
    }
    rows.iter().all(|(_, b)| *b >= rat(0))
}

proptest! {
    #[test]
    fn feasibility_matches_elimination(raw in raw_system()) {
        let sys = raw.build();
        let res = lp::feasible(&sys);
        prop_assert_eq!(res.is_feasible(), fourier_motzkin(&raw));
        if let Some(w) = res.witness {
            prop_assert!(sys.is_satisfied_by(w.coords()));
        }
    }

    #[test]
    fn dropping_a_constraint_keeps_feasibility(raw in raw_system()) {
        prop_assume!(!raw.les.is_empty());
        if lp::feasible(&raw.build()).is_feasible() {
            let mut fewer = raw.clone();
            fewer.les.pop();
            prop_assert!(lp::feasible(&fewer.build()).is_feasible());
        }
    }

    #[test]
    fn margin_witness_is_feasible(raw in raw_system()) {
        let sys = raw.build();
        let all: Vec<usize> = (0..sys.inequalities().len()).collect();
        let res = lp::maximize_margin(&sys, &all);
        prop_assert_eq!(res.is_feasible(), lp::feasible(&sys).is_feasible());
        if let Some(w) = res.witness {
            prop_assert!(sys.is_satisfied_by(w.coords()));
        }
    }

    #[test]
    fn independent_equalities_cut_dimension(n in 1usize..=5, k in 0usize..=5, shift in -4i64..=4) {
        let k = k.min(n);
        let mut sys = LinearSystem::new(n);
        prop_assert_eq!(lp::affine_dimension(&sys), n as i64);
        for i in 0..k {
            let mut a = vec![rat(0); n];
            a[i] = rat(1);
            if i + 1 < n {
                a[i + 1] = rat(shift);
            }
            sys.add_eq(a.clone(), rat(i as i64)).unwrap();
            // A repeated, rescaled equality does not lower the dimension.
            sys.add_eq(a.iter().map(|v| v * rat(2)).collect(), rat(2 * i as i64)).unwrap();
            prop_assert_eq!(lp::affine_dimension(&sys), (n - i - 1) as i64);
        }
    }
}

// ---------- tropical linear algebra ----------

fn int_matrix(max_k: usize) -> impl Strategy<Value = Vec<Vec<Option<i64>>>> {
    (1..=max_k).prop_flat_map(|k| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![4 => (0i64..=9).prop_map(Some), 1 => Just(None)], k),
            k,
        )
    })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn brute_force(a: &[Vec<Option<i64>>]) -> (Option<i64>, bool) {
    let values: Vec<i64> = permutations(a.len())
        .iter()
        .filter_map(|p| p.iter().enumerate().map(|(i, &j)| a[i][j]).sum::<Option<i64>>())
        .collect();
    match values.iter().min() {
        None => (None, true),
        Some(&m) => (Some(m), values.iter().filter(|&&v| v == m).count() >= 2),
    }
}

fn ext(v: Option<i64>) -> ExtRational {
    v.map_or(ExtRational::Infinity, ExtRational::from_int)
}

proptest! {
    #[test]
    fn determinant_matches_permutations(a in int_matrix(5)) {
        let m = TropicalMatrix::from_ints(&a).unwrap();
        let (det, singular) = brute_force(&a);
        prop_assert_eq!(linalg::trop_det(&m).unwrap(), ext(det));
        prop_assert_eq!(linalg::is_singular(&m).unwrap(), singular);
    }

    #[test]
    fn row_shift_and_transpose(a in int_matrix(6), row in 0usize..6, c in small_rat()) {
        let m = TropicalMatrix::from_ints(&a).unwrap();
        let row = row % m.rows();
        let det = linalg::trop_det(&m).unwrap();
        let singular = linalg::is_singular(&m).unwrap();
        let mut shifted = m.clone();
        for j in 0..m.cols() {
            let v = m.get(row, j).clone() + ExtRational::Finite(c.clone());
            shifted.set(row, j, v);
        }
        prop_assert_eq!(linalg::trop_det(&shifted).unwrap(), det.clone() + ExtRational::Finite(c));
        prop_assert_eq!(linalg::is_singular(&shifted).unwrap(), singular);
        let t = m.transpose();
        prop_assert_eq!(linalg::trop_det(&t).unwrap(), det);
        prop_assert_eq!(linalg::is_singular(&t).unwrap(), singular);
    }
}

// ---------- cells and topology ----------

/// Linear system with `m` rows over `n` variables; each row keeps two finite entries.
fn linear_system(max_n: usize, max_m: usize) -> impl Strategy<Value = LinearTropSystem> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![3 => (0i64..=6).prop_map(Some), 1 => Just(None)], n + 1)
                .prop_filter("two finite entries", |r| r.iter().flatten().count() >= 2),
            m,
        )
        .prop_map(|rows| {
            LinearTropSystem::from_matrix(TropicalMatrix::from_ints(&rows).unwrap()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cell_witnesses_are_members(
        (_, polys) in with_dim(3, |n| prop::collection::vec(poly(n, 2, 5), 1..=3).boxed())
    ) {
        let sys = PolySystem::from_polys(polys).unwrap();
        for c in cells::enumerate_cells(&sys, &opts()).unwrap() {
            prop_assert!(sys.contains(&c.witness).unwrap());
            prop_assert!(c.system.is_satisfied_by(c.witness.coords()));
            prop_assert_eq!(c.dimension, cells::cell_dimension(&c));
        }
    }

    #[test]
    fn members_lie_in_some_cell(
        (_, polys) in with_dim(2, |n| prop::collection::vec(poly(n, 2, 5), 1..=2).boxed())
    ) {
        let sys = PolySystem::from_polys(polys).unwrap();
        let n = sys.dim();
        let all = cells::enumerate_cells(&sys, &opts()).unwrap();
        let cover = cells::cover_cells(&sys, &opts()).unwrap();
        let grid: Vec<Rat> = (-8..=8).map(|v| ratio(v, 2)).collect();
        let points: Vec<Point> = if n == 1 {
            grid.iter().map(|a| Point(vec![a.clone()])).collect()
        } else {
            grid.iter()
                .flat_map(|a| grid.iter().map(move |b| Point(vec![a.clone(), b.clone()])))
                .collect()
        };
        for x in points {
            if sys.contains(&x).unwrap() {
                prop_assert!(all.iter().any(|c| c.system.is_satisfied_by(x.coords())));
                prop_assert!(cover.iter().any(|c| c.system.is_satisfied_by(x.coords())));
            }
        }
    }

    #[test]
    fn cells_do_not_depend_on_polynomial_order(
        (_, polys) in with_dim(2, |n| prop::collection::vec(poly(n, 2, 4), 2..=3).boxed())
    ) {
        let forward = PolySystem::from_polys(polys.clone()).unwrap();
        let mut rev = polys;
        rev.reverse();
        let backward = PolySystem::from_polys(rev).unwrap();
        let summary = |s: &PolySystem| {
            let mut v: Vec<(i64, Point)> = cells::enumerate_cells(s, &opts())
                .unwrap()
                .into_iter()
                .map(|c| (c.dimension, c.witness))
                .collect();
            v.sort();
            v.into_iter().map(|(d, _)| d).collect::<Vec<_>>()
        };
        prop_assert_eq!(summary(&forward), summary(&backward));
        prop_assert_eq!(
            topology::connected_components(&forward, &opts()).unwrap(),
            topology::connected_components(&backward, &opts()).unwrap()
        );
    }

    #[test]
    fn curve_vertices_are_dual_to_polygons(f in poly(2, 3, 8)) {
        // Vertices of the curve: point cells and endpoints of edge cells.
        let sys = PolySystem::from_polys(vec![f.clone()]).unwrap();
        let mut vertices: Vec<Point> = cells::enumerate_cells(&sys, &opts())
            .unwrap()
            .into_iter()
            .filter(|c| c.dimension == 0)
            .map(|c| c.witness)
            .collect();
        for e in cells::curve_edges(&f, &opts()).unwrap() {
            vertices.extend(e.start);
            vertices.extend(e.end);
        }
        vertices.sort();
        vertices.dedup();
        let exps: Vec<(i64, i64)> = f
            .terms()
            .iter()
            .map(|t| (i64::from(t.exponent[0]), i64::from(t.exponent[1])))
            .collect();
        let polygons = cells::regular_subdivision_2d(&f)
            .unwrap()
            .into_iter()
            .filter(|face| {
                let p: Vec<(i64, i64)> = face.tight_set.iter().map(|&i| exps[i]).collect();
                p.iter().skip(2).any(|q| {
                    (p[1].0 - p[0].0) * (q.1 - p[0].1) - (p[1].1 - p[0].1) * (q.0 - p[0].0) != 0
                })
            })
            .count();
        prop_assert_eq!(vertices.len(), polygons);
        prop_assert_eq!(cells::curve_vertices(&f).unwrap(), vertices);
    }

    #[test]
    fn cell_graph_edges_are_sound(
        (_, polys) in with_dim(2, |n| prop::collection::vec(poly(n, 2, 4), 1..=2).boxed())
    ) {
        let sys = PolySystem::from_polys(polys).unwrap();
        let g = topology::cell_graph(&sys, &opts()).unwrap();
        for &(i, j) in &g.edges {
            let merged = g.cells[i].system.merged(&g.cells[j].system).unwrap();
            let w = lp::feasible(&merged).witness.expect("edge means the cells meet");
            prop_assert!(g.cells[i].system.is_satisfied_by(w.coords()));
            prop_assert!(g.cells[j].system.is_satisfied_by(w.coords()));
        }
    }

    #[test]
    fn components_ignore_scaling(
        (_, polys, c) in with_dim(2, |n| (prop::collection::vec(poly(n, 2, 4), 1..=2), small_rat()).boxed())
            .prop_map(|(n, (p, c))| (n, p, c))
    ) {
        let sys = PolySystem::from_polys(polys.clone()).unwrap();
        let scaled = PolySystem::from_polys(polys.iter().map(|f| f.scale(&c)).collect()).unwrap();
        prop_assert_eq!(
            topology::connected_components(&sys, &opts()).unwrap(),
            topology::connected_components(&scaled, &opts()).unwrap()
        );
    }

    #[test]
    fn finite_reports_list_their_points(
        (_, polys) in with_dim(2, |n| prop::collection::vec(poly(n, 2, 4), 1..=3).boxed())
    ) {
        let sys = PolySystem::from_polys(polys).unwrap();
        let r = topology::analyze(&sys, &opts()).unwrap();
        prop_assert_eq!(r.nonempty, r.component_count >= 1);
        if r.finite && r.nonempty {
            prop_assert_eq!(r.dimension, 0);
            prop_assert_eq!(r.points.as_ref().map(Vec::len), Some(r.component_count));
        }
    }

    #[test]
    fn linear_prevarieties_are_connected(
        lin in linear_system(4, 4),
        weights in prop::collection::vec((small_rat(), small_rat()), 4)
    ) {
        let sys = lin.to_polys();
        let cover = cells::cover_cells(&sys, &opts()).unwrap();
        prop_assume!(!cover.is_empty());
        prop_assert_eq!(topology::count_components(&cover), 1);
        for (k, (l, m)) in weights.into_iter().enumerate() {
            let x = &cover[k % cover.len()].witness;
            let y = &cover[(k * 7 + 3) % cover.len()].witness;
            let low = if l < m { l.clone() } else { m.clone() };
            let z = topology::tropical_combination(x, y, &(l - &low), &(m - &low)).unwrap();
            prop_assert!(sys.contains(&z).unwrap());
        }
    }

    #[test]
    fn consistent_linear_systems_have_codimension_m(lin in linear_system(4, 4)) {
        prop_assume!(lin.m() <= lin.n());
        if linalg::m_consistency_linear(&lin, &opts()).unwrap() {
            prop_assert_eq!(
                topology::prevariety_dimension(&lin.to_polys(), &opts()).unwrap(),
                (lin.n() - lin.m()) as i64
            );
        }
    }
}

// ---------- gadgets ----------

fn cnf(max_n: usize, max_k: usize) -> impl Strategy<Value = CnfFormula> {
    (1..=max_n).prop_flat_map(move |n| {
        let lit = (1..=n, any::<bool>()).prop_map(|(var, positive)| Literal { var, positive });
        prop::collection::vec(prop::collection::vec(lit, 1..=3), 0..=max_k)
            .prop_map(move |clauses| CnfFormula::new(n, clauses).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn intersection_encoding_is_parsimonious(f in cnf(5, 8)) {
        let e = gadgets::encode_intersection(&f);
        prop_assert!(e.system.max_degree() <= 2);
        prop_assert_eq!(e.total_vars, f.n_vars() + f.count_three_positive());
        let count = gadgets::brute_force_count(&f).unwrap();
        prop_assert_eq!(topology::connected_components(&e.system, &opts()).unwrap() as u64, count);
        let d = e.total_vars;
        let mask = (1u64 << f.n_vars()) - 1;
        for a in 0u64..1 << d {
            let p = Point((0..d).map(|i| rat((a >> i & 1) as i64)).collect());
            if e.system.contains(&p).unwrap() {
                prop_assert!(f.is_satisfied_by(a & mask));
            }
        }
    }

    #[test]
    fn embedded_encodings(f in cnf(4, 6)) {
        let count = gadgets::brute_force_count(&f).unwrap();
        let cons = gadgets::encode_consistency(&f);
        prop_assert!(cons.system.max_degree() <= 2);
        let r = topology::analyze(&cons.system, &opts()).unwrap();
        prop_assert_eq!(r.nonempty, count > 0);
        prop_assert_eq!(r.component_count as u64, count);
        if r.nonempty {
            prop_assert_eq!(r.dimension, 1);
        }
        let conn = gadgets::encode_connectivity(&f);
        prop_assert!(conn.system.max_degree() <= 3);
        prop_assert_eq!(topology::connected_components(&conn.system, &opts()).unwrap() as u64, count + 1);
    }

    #[test]
    fn dimacs_roundtrip(f in cnf(6, 10)) {
        prop_assert_eq!(CnfFormula::from_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}
