use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use symcrit::critical::oracle::{brute_force_forest_count, SUBSET_LIMIT};
use symcrit::critical::{critical_group, forest_count, p_bicycle_space, AdjointPair};
use symcrit::graph::{decompose, validate, Multigraph, Side};
use symcrit::harness::{parse, random_symmetric_graph, serialize, RandomParams};
use symcrit::lattice::{
    group_of_type, hom_cokernel, hom_kernel, hom_well_defined, quotient_group, smith_normal_form, GroupHom,
    GroupType, IntMatrix,
};
use symcrit::modp::{intersect, row_space, sum, ModpMatrix};
use symcrit::registry::{CheckRegistry, CheckStatus};
use symcrit::symmetry::main_theorem_verdict;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(move |edges| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String, String)> = edges
                .iter()
                .enumerate()
                .map(|(j, &(t, h))| (format!("e{j}"), names[t].clone(), names[h].clone()))
                .collect();
            Multigraph::from_parts(&names, &edges).unwrap()
        })
    })
}

fn params() -> impl Strategy<Value = (u64, RandomParams)> {
    (
        any::<u64>(),
        0..4usize,
        0..4usize,
        0..6usize,
        0..4usize,
        any::<bool>(),
    )
        .prop_map(|(seed, l, f, le, fe, loops)| {
            let p = RandomParams {
                left_vertices: l,
                fixed_vertices: f,
                left_edges: if l + f == 0 { 0 } else { le },
                fixed_edges: if f == 0 { 0 } else { fe },
                allow_loops: loops || f < 2,
            };
            (seed, p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn snf_witnesses(a in matrix(7, 9)) {
        let d = smith_normal_form(&a);
        prop_assert_eq!(d.u.mul(&a).unwrap().mul(&d.v).unwrap(), d.s.clone());
        prop_assert!(d.u.is_unimodular() && d.v.is_unimodular());
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    prop_assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let diag = d.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            prop_assert!(divides);
        }
        if a.rows() == a.cols() {
            let product: BigInt = diag.iter().product();
            prop_assert_eq!(product.abs(), a.determinant().unwrap().abs());
        }
    }

    #[test]
    fn quotient_is_invariant_under_unimodular_change(a in matrix(6, 5), k in -4i64..=4, i in 0usize..6, j in 0usize..6) {
        let n = a.rows();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let mut rows: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| (r == c) as i64).collect()).collect();
        rows[i][j] = k;
        let e = IntMatrix::from_rows(&rows);
        let g = quotient_group(n, &a).unwrap();
        let h = quotient_group(n, &e.mul(&a).unwrap()).unwrap();
        prop_assert_eq!(g.normal_form(), h.normal_form());
        let m = a.cols();
        let mut cols: Vec<Vec<i64>> = (0..m).map(|r| (0..m).map(|c| (r == c) as i64).collect()).collect();
        if m > 1 {
            cols[0][m - 1] = k;
        }
        let c = quotient_group(n, &a.mul(&IntMatrix::from_rows(&cols)).unwrap()).unwrap();
        prop_assert_eq!(g.normal_form(), c.normal_form());
    }

    #[test]
    fn first_isomorphism_theorem(
        src in prop::collection::vec(1u64..12, 1..4),
        tgt in prop::collection::vec(1u64..12, 1..4),
        ks in prop::collection::vec(-5i64..=5, 16),
    ) {
        let big = |xs: &[u64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let source = quotient_group(src.len(), &IntMatrix::diagonal(src.len(), src.len(), &big(&src))).unwrap();
        let target = quotient_group(tgt.len(), &IntMatrix::diagonal(tgt.len(), tgt.len(), &big(&tgt))).unwrap();
        let rows: Vec<Vec<i64>> = tgt
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                src.iter()
                    .enumerate()
                    .map(|(j, &a)| ks[i * 4 + j] * (b / a.gcd(&b)) as i64)
                    .collect()
            })
            .collect();
        let h = GroupHom::new(source, target, IntMatrix::from_rows(&rows)).unwrap();
        prop_assert!(hom_well_defined(&h));
        let ker = hom_kernel(&h).unwrap().order().unwrap();
        let coker = hom_cokernel(&h).unwrap().order().unwrap();
        let s = h.source.order().unwrap();
        let t = h.target.order().unwrap();
        prop_assert_eq!(s * coker, ker * t);
    }

    #[test]
    fn grassmann_identity(p in prop::sample::select(vec![2u32, 3, 5]), a in matrix(5, 4), b in matrix(5, 4)) {
        let width = a.cols().min(b.cols());
        let a = ModpMatrix::from_int_matrix(&a.transpose().top_rows(width).transpose(), p).unwrap();
        let b = ModpMatrix::from_int_matrix(&b.transpose().top_rows(width).transpose(), p).unwrap();
        let (sa, sb) = (row_space(&a), row_space(&b));
        let s = sum(&sa, &sb).unwrap();
        let i = intersect(&sa, &sb).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), sa.dim() + sb.dim());
        prop_assert!(i.is_subspace_of(&sa) && sa.is_subspace_of(&s));
    }

    #[test]
    fn critical_group_order_is_forest_count(g in graph(6, 9)) {
        let k = critical_group(&AdjointPair::from_graph(&g));
        let brute = brute_force_forest_count(&g, SUBSET_LIMIT).unwrap();
        prop_assert_eq!(k.order().unwrap(), BigInt::from(brute));
        prop_assert_eq!(forest_count(&g), BigInt::from(brute));
    }

    #[test]
    fn bicycles_count_invariant_factors(g in graph(6, 10), p in prop::sample::select(vec![2u32, 3, 5])) {
        let pair = AdjointPair::from_graph(&g);
        let k = critical_group(&pair);
        let divisible = k.invariant_factors().iter().filter(|d| (*d % p).is_zero()).count();
        prop_assert_eq!(p_bicycle_space(&pair, p).unwrap().dim(), divisible);
    }

    #[test]
    fn symmetric_graph_invariants((seed, p) in params()) {
        let g = random_symmetric_graph(seed, &p).unwrap();
        prop_assert!(validate(&g).is_empty());
        prop_assert_eq!(parse(&serialize(&g)).unwrap(), g.clone());
        for v in 0..g.graph().vertex_count() {
            prop_assert_eq!(g.phi_vertex(g.phi_vertex(v)), v);
        }
        let count = |s| g.edges_on(s).len();
        let dec = decompose(&g).unwrap();
        prop_assert_eq!(dec.plus.edge_count(), count(Side::Left) + 2 * count(Side::Fixed));
        prop_assert_eq!(dec.minus.edge_count(), count(Side::Right));
        prop_assert_eq!(
            dec.plus.vertex_count(),
            g.vertices_on(Side::Left).len() + g.vertices_on(Side::Fixed).len() + count(Side::Fixed)
        );
        prop_assert_eq!(dec.minus.vertex_count(), g.vertices_on(Side::Right).len() + 1);
    }

    #[test]
    fn standard_checks_never_fail((seed, p) in params()) {
        let g = random_symmetric_graph(seed, &p).unwrap();
        let r = main_theorem_verdict(&g).unwrap();
        for o in CheckRegistry::standard().run(&r) {
            prop_assert_ne!(o.status, CheckStatus::Fail, "{}", o.name);
        }
        let two = BigInt::from(2);
        prop_assert!(r.torsion.ker_f.is_killed_by(&two) && r.torsion.coker_f.is_killed_by(&two));
        prop_assert!(r.k_g.quotient.order().unwrap() >= BigInt::one());
    }
}

#[test]
fn group_of_type_round_trips() {
    let t = GroupType::from_cyclic_factors(&[BigInt::from(6), BigInt::from(4)], 1);
    assert_eq!(group_of_type(&t).normal_form(), &t);
}
