use num_bigint::BigInt;

use super::*;
use crate::graph::symmetric::tests::{even_cycle, running_example};
use crate::graph::{Multigraph, Side, SymmetricGraph};
use crate::lattice::{hom_well_defined, GroupType};

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn single_fixed_edge() -> SymmetricGraph {
    let g = Multigraph::from_parts(&["u", "v"], &[("e", "u", "v")]).unwrap();
    SymmetricGraph::new(g, vec![0, 1], vec![0], vec![Side::Fixed; 2], vec![Side::Fixed]).unwrap()
}

/// A triangle with the identity involution: every vertex and edge fixed.
fn fixed_triangle() -> SymmetricGraph {
    let g = Multigraph::from_parts(
        &["x", "y", "z"],
        &[("xy", "x", "y"), ("yz", "y", "z"), ("zx", "z", "x")],
    )
    .unwrap();
    SymmetricGraph::new(
        g,
        vec![0, 1, 2],
        vec![0, 1, 2],
        vec![Side::Fixed; 3],
        vec![Side::Fixed; 3],
    )
    .unwrap()
}

/// Two triangles swapped by the involution, with nothing fixed.
fn swapped_triangles() -> SymmetricGraph {
    let g = Multigraph::from_parts(
        &["a", "b", "c", "a'", "b'", "c'"],
        &[
            ("ab", "a", "b"),
            ("bc", "b", "c"),
            ("ca", "c", "a"),
            ("ab'", "a'", "b'"),
            ("bc'", "b'", "c'"),
            ("ca'", "c'", "a'"),
        ],
    )
    .unwrap();
    use Side::*;
    SymmetricGraph::new(
        g,
        vec![3, 4, 5, 0, 1, 2],
        vec![3, 4, 5, 0, 1, 2],
        vec![Left, Left, Left, Right, Right, Right],
        vec![Left, Left, Left, Right, Right, Right],
    )
    .unwrap()
}

#[test]
fn running_example_columns() {
    let maps = build_maps(&running_example()).unwrap();
    let dec = maps.decomposition();
    // Edges of G: ab, ac, db, dc, cb.
    let ab = dec.plus_edge_of_left(0).unwrap();
    assert_eq!(maps.f().column(ab), ints(&[1, 0, 1, 0, 0]));
    let (h1, h2) = dec.halves_of_fixed(4).unwrap();
    assert_eq!(maps.f().column(h1), ints(&[0, 0, 0, 0, 1]));
    let dc = maps.plus_edges() + dec.minus_edge_of_right(3).unwrap();
    assert_eq!(maps.f().column(dc), ints(&[0, -1, 0, 1, 0]));
    let mut expect = vec![BigInt::from(0); maps.block_edges()];
    expect[h1] = BigInt::from(1);
    expect[h2] = BigInt::from(1);
    assert_eq!(maps.ft().column(4), expect);
    assert_eq!(*maps.ft(), maps.f().transpose());
}

#[test]
fn involutions_square_to_identity() {
    for g in [
        running_example(),
        even_cycle(3),
        single_fixed_edge(),
        fixed_triangle(),
    ] {
        let maps = build_maps(&g).unwrap();
        let n = maps.block_edges();
        let id = crate::modp::ModpMatrix::identity(2, n).unwrap();
        assert_eq!(maps.psi().mul(maps.psi()).unwrap(), id);
        let m = g.graph().edge_count();
        let id = crate::modp::ModpMatrix::identity(2, m).unwrap();
        assert_eq!(maps.phi_edges().mul(maps.phi_edges()).unwrap(), id);
    }
}

#[test]
fn preservation_identities() {
    for g in [
        running_example(),
        even_cycle(4),
        single_fixed_edge(),
        fixed_triangle(),
        swapped_triangles(),
    ] {
        let maps = build_maps(&g).unwrap();
        let rep = verify_lattice_preservation(&maps).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.identities.len(), 5);
    }
}

#[test]
fn running_example_sequence() {
    let maps = build_maps(&running_example()).unwrap();
    let h = induced_f_star(&maps).unwrap();
    assert!(hom_well_defined(&h));
    assert_eq!(h.source.normal_form().invariant_factors, ints(&[2, 4]));
    assert_eq!(*h.target.normal_form(), GroupType::cyclic(8));
    let t = two_torsion_check(&maps).unwrap();
    assert!(t.passed(), "{t:?}");
    assert_eq!(t.ker_f, GroupType::cyclic(2));
    assert_eq!(t.coker_f, GroupType::cyclic(2));
    assert!(t.duality().passed());

    let r = main_theorem_verdict(&running_example()).unwrap();
    assert_eq!(r.k_g.quotient, GroupType::cyclic(8));
    assert_eq!(r.k_plus.quotient, GroupType::cyclic(4));
    assert_eq!(r.k_minus.quotient, GroupType::cyclic(2));
    assert_eq!(r.exponent, 0);
    assert!(r.hypotheses.forest_applies());
    assert!(r.exact_sequence() && r.ratio() && r.corollary() && r.laplacian_agrees());
}

#[test]
fn running_example_bicycles() {
    let maps = build_maps(&running_example()).unwrap();
    let phi = phi_fixed_bicycles(&maps).unwrap();
    assert_eq!(phi.basis_vectors(), vec![vec![1, 1, 1, 1, 0]]);
    let psi = psi_fixed_bicycles(&maps).unwrap();
    assert_eq!(psi.basis_vectors(), vec![vec![1; 6]]);

    // G+ and G- are each bicycles of the union, but neither is psi-fixed.
    let bic = crate::critical::p_bicycle_space(maps.block_pair(), 2).unwrap();
    let n_plus = maps.plus_edges();
    let plus_only: Vec<u8> = (0..6).map(|j| (j < n_plus) as u8).collect();
    let minus_only: Vec<u8> = (0..6).map(|j| (j >= n_plus) as u8).collect();
    assert!(bic.contains(&plus_only) && bic.contains(&minus_only));
    assert!(!psi.contains(&plus_only) && !psi.contains(&minus_only));

    let g = g_injection(&maps).unwrap();
    assert!(g.passed());
    assert_eq!(g.images.row_vectors(), vec![vec![1, 1, 1, 1, 0]]);

    let t = two_torsion_check(&maps).unwrap();
    let id = identify_kernel_cokernel(&maps, &t).unwrap();
    assert!(id.passed());
    assert_eq!((id.phi_quotient_dim, id.psi_quotient_dim), (1, 1));
    assert!(id.quotients_match());
    assert!(kernel_bases(&maps).unwrap().passed());

    let s = snake_report(&maps, &t).unwrap();
    assert_eq!((s.b_psi, s.b_phi), (2, 2));
    assert_eq!(s.sum_phi, 2);
    assert!(s.bond_psi_formula() && s.bond_phi_formula() && s.cycle_formula());
    assert!(s.columns_exact() && s.sum_ratio() && s.alternating_product());

    let basis = forsnake2_constructive_basis(&maps).unwrap();
    assert!(basis.cycles.is_empty());
    assert!(basis.passed());
}

#[test]
fn even_cycles() {
    for n in 2..=8u64 {
        let r = main_theorem_verdict(&even_cycle(n as usize)).unwrap();
        assert_eq!(r.k_g.quotient, GroupType::cyclic(2 * n));
        assert!(r.k_plus.quotient.is_trivial());
        assert_eq!(r.k_minus.quotient, GroupType::cyclic(n));
        assert!(r.torsion.ker_f.is_trivial());
        assert_eq!(r.torsion.coker_f, GroupType::cyclic(2));
        assert_eq!(r.exponent, 1);
        assert!(r.ratio() && r.corollary() && r.exact_sequence());
        assert_eq!((r.bicycles.phi_fixed_dim, r.bicycles.psi_fixed_dim), (1, 0));
        assert!(r.bicycles.passed() && r.injection.passed());
        // The quotient presentations attach to the opposite sides.
        assert_eq!((r.bicycles.phi_quotient_dim, r.bicycles.psi_quotient_dim), (0, 1));
        assert!(r.bicycles.quotients_match());
        let split = GroupType::from_cyclic_factors(&[BigInt::from(n), BigInt::from(2)], 0);
        assert_eq!(r.k_g.quotient == split, n % 2 == 1);
        let basis = r.forsnake2.unwrap();
        assert_eq!(basis.cycles, vec![vec![1; 2 * n as usize]]);
        assert!(basis.passed());
        assert_eq!(basis.quotient_dim, 1);
        assert!(r.snake.cycle_formula() && r.snake.alternating_product());
    }
}

#[test]
fn single_fixed_edge_is_trivial() {
    let r = main_theorem_verdict(&single_fixed_edge()).unwrap();
    assert!(r.k_g.quotient.is_trivial() && r.k_plus.quotient.is_trivial());
    assert!(r.torsion.ker_f.is_trivial() && r.torsion.coker_f.is_trivial());
    assert_eq!(r.exponent, 0);
    assert!(r.ratio() && r.snake.alternating_product());
    assert_eq!(r.snake.z_phi + r.snake.cap_phi + r.snake.z_psi, 0);
    let maps = build_maps(&single_fixed_edge()).unwrap();
    let rep = verify_lattice_preservation(&maps).unwrap();
    assert_eq!(rep.identities[0], ("subdivision vertex", true));
}

#[test]
fn cyclic_fixed_subgraph() {
    // The ratio survives a cycle of fixed edges, but g is no longer injective.
    let r = main_theorem_verdict(&fixed_triangle()).unwrap();
    assert_eq!(r.exponent, -1);
    assert!(r.hypotheses.ratio_applies() && !r.hypotheses.forest_applies());
    assert!(r.ratio() && r.corollary());
    assert_eq!(r.torsion.ker_f, GroupType::cyclic(2));
    assert!(r.torsion.coker_f.is_trivial());
    assert!(!r.injection.injective());
    assert!(!r.snake.cycle_formula());
}

#[test]
fn fixed_digon_breaks_cokernel_bicycles() {
    // Two parallel fixed edges form a phi-fixed bicycle, yet f* is onto.
    let g = Multigraph::from_parts(&["u", "v"], &[("x", "u", "v"), ("y", "u", "v")]).unwrap();
    let g = SymmetricGraph::new(
        g,
        vec![0, 1],
        vec![0, 1],
        vec![Side::Fixed; 2],
        vec![Side::Fixed; 2],
    )
    .unwrap();
    let r = main_theorem_verdict(&g).unwrap();
    assert!(r.hypotheses.ratio_applies() && !r.hypotheses.fixed_forest());
    assert_eq!(r.k_plus.quotient, GroupType::cyclic(4));
    assert!(r.torsion.coker_f.is_trivial());
    assert_eq!(r.bicycles.phi_fixed_dim, 1);
    assert!(r.bicycles.kernel_matches() && !r.bicycles.cokernel_matches());
    assert!(r.ratio() && r.corollary());
}

#[test]
fn no_fixed_vertices() {
    let r = main_theorem_verdict(&swapped_triangles()).unwrap();
    assert!(!r.hypotheses.ratio_applies());
    assert_eq!(r.k_minus.quotient, GroupType::cyclic(3));
    assert!(r.exact_sequence());
    assert!(!r.ratio());
    let maps = build_maps(&swapped_triangles()).unwrap();
    assert!(matches!(
        forsnake2_constructive_basis(&maps),
        Err(SymmetryError::Precondition(_))
    ));
}

#[test]
fn power_of_two_comparison() {
    let b = |x: i64| BigInt::from(x);
    assert!(equals_power_of_two_multiple(&b(8), &b(2), 2));
    assert!(equals_power_of_two_multiple(&b(3), &b(6), -1));
    assert!(!equals_power_of_two_multiple(&b(3), &b(6), 1));
    assert_eq!(log2_order(&GroupType::cyclic(8)), Some(3));
    assert_eq!(log2_order(&GroupType::trivial()), Some(0));
    assert_eq!(log2_order(&GroupType::cyclic(6)), None);
}
