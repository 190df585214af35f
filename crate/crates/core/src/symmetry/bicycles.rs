use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{SymmetryError, SymmetryMaps, TwoTorsionReport};
use crate::critical::p_bicycle_space;
use crate::graph::{fixed_subgraph_components, Side};
use crate::lattice::GroupType;
use crate::modp::{fixed_subspace, intersect, kernel, row_space, sum, ModpMatrix, ModpSubspace};

fn mod2(m: &crate::lattice::IntMatrix) -> ModpMatrix {
    ModpMatrix::from_int_matrix(m, 2).expect("2 is prime")
}

/// `phi`-fixed elements of `Z ∩ B` mod 2.
pub fn phi_fixed_bicycles(maps: &SymmetryMaps) -> Result<ModpSubspace, SymmetryError> {
    let bic = p_bicycle_space(maps.pair(), 2)?;
    Ok(fixed_subspace(maps.phi_edges(), &bic)?)
}

/// `psi`-fixed elements of `(Z+ + Z-) ∩ (B+ + B-)` mod 2.
pub fn psi_fixed_bicycles(maps: &SymmetryMaps) -> Result<ModpSubspace, SymmetryError> {
    let bic = p_bicycle_space(maps.block_pair(), 2)?;
    Ok(fixed_subspace(maps.psi(), &bic)?)
}

/// `log2 |A|` when `A` is a finite 2-group.
pub fn log2_order(g: &GroupType) -> Option<u32> {
    let n = g.order()?;
    let bits = n.bits();
    if bits == 0 {
        return None;
    }
    (n == num_bigint::BigInt::from(1) << (bits - 1)).then(|| (bits - 1) as u32)
}

/// Kernels of `f` and `f^t` mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelBases {
    pub ft_kernel_dim: usize,
    pub left_edges: usize,
    /// `ker f^t` is spanned by the `e + phi(e)`.
    pub ft_kernel_is_symmetrized: bool,
    /// `ker f` is exactly the `psi`-fixed subspace.
    pub f_kernel_is_psi_fixed: bool,
}

impl KernelBases {
    pub fn passed(&self) -> bool {
        self.ft_kernel_dim == self.left_edges && self.ft_kernel_is_symmetrized && self.f_kernel_is_psi_fixed
    }
}

pub fn kernel_bases(maps: &SymmetryMaps) -> Result<KernelBases, SymmetryError> {
    let g = maps.graph();
    let m = g.graph().edge_count();
    let ft_kernel = kernel(&mod2(maps.ft()));
    let symmetrized: Vec<Vec<u8>> = g
        .edges_on(Side::Left)
        .into_iter()
        .map(|e| {
            let mut v = vec![0u8; m];
            v[e] = 1;
            v[g.phi_edge(e)] = 1;
            v
        })
        .collect();
    let symmetrized = ModpSubspace::span_vectors(2, m, &symmetrized)?;
    let n = maps.block_edges();
    let psi_fixed = fixed_subspace(maps.psi(), &ModpSubspace::full(2, n)?)?;
    Ok(KernelBases {
        ft_kernel_dim: ft_kernel.dim(),
        left_edges: g.edges_on(Side::Left).len(),
        ft_kernel_is_symmetrized: ft_kernel == symmetrized,
        f_kernel_is_psi_fixed: kernel(&mod2(maps.f())) == psi_fixed,
    })
}

/// Kernel and cokernel of `f*` read off from fixed bicycles and from the
/// fixed parts of the mod 2 cycle and bond spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicycleIdentification {
    pub phi_fixed_dim: usize,
    pub psi_fixed_dim: usize,
    pub coker_log2: Option<u32>,
    pub ker_log2: Option<u32>,
    /// `ker(f^t)` on the bicycles of `G` is the `phi`-fixed bicycles.
    pub ft_restriction_matches: bool,
    /// `ker(f)` on the bicycles of `G+ u G-` is the `psi`-fixed bicycles.
    pub f_restriction_matches: bool,
    /// `dim ((Z/2)E)^phi / (Z^phi + B^phi)`.
    pub phi_quotient_dim: usize,
    /// `dim ((Z/2)(E+ u E-))^psi / ((Z+ + Z-)^psi + (B+ + B-)^psi)`.
    pub psi_quotient_dim: usize,
}

impl BicycleIdentification {
    /// `|ker f*| = 2^dim` of the `psi`-fixed bicycles, which are `ker f` on bicycles.
    pub fn kernel_matches(&self) -> bool {
        self.ker_log2 == Some(self.psi_fixed_dim as u32) && self.f_restriction_matches
    }

    /// `|coker f*| = 2^dim` of the `phi`-fixed bicycles, which are `ker f^t` on
    /// bicycles. Can fail when the fixed subgraph has a cycle.
    pub fn cokernel_matches(&self) -> bool {
        self.coker_log2 == Some(self.phi_fixed_dim as u32) && self.ft_restriction_matches
    }

    /// `ker f*` has the order of the `phi`-side quotient and `coker f*` that
    /// of the `psi`-side quotient.
    pub fn quotients_match(&self) -> bool {
        self.ker_log2 == Some(self.phi_quotient_dim as u32)
            && self.coker_log2 == Some(self.psi_quotient_dim as u32)
    }

    pub fn passed(&self) -> bool {
        self.kernel_matches() && self.cokernel_matches()
    }
}

/// Fixed parts of the cycle and bond spaces mod 2 on both sides.
struct FixedSpaces {
    z_psi: ModpSubspace,
    b_psi: ModpSubspace,
    z_phi: ModpSubspace,
    b_phi: ModpSubspace,
    ambient_psi: usize,
    ambient_phi: usize,
}

fn fixed_spaces(maps: &SymmetryMaps) -> Result<FixedSpaces, SymmetryError> {
    let d = mod2(maps.pair().d());
    let db = mod2(maps.block_pair().d());
    let full_phi = ModpSubspace::full(2, d.cols())?;
    let full_psi = ModpSubspace::full(2, db.cols())?;
    Ok(FixedSpaces {
        z_psi: fixed_subspace(maps.psi(), &kernel(&db))?,
        b_psi: fixed_subspace(maps.psi(), &row_space(&db))?,
        z_phi: fixed_subspace(maps.phi_edges(), &kernel(&d))?,
        b_phi: fixed_subspace(maps.phi_edges(), &row_space(&d))?,
        ambient_psi: fixed_subspace(maps.psi(), &full_psi)?.dim(),
        ambient_phi: fixed_subspace(maps.phi_edges(), &full_phi)?.dim(),
    })
}

pub fn identify_kernel_cokernel(
    maps: &SymmetryMaps,
    torsion: &TwoTorsionReport,
) -> Result<BicycleIdentification, SymmetryError> {
    let phi_fixed = phi_fixed_bicycles(maps)?;
    let psi_fixed = psi_fixed_bicycles(maps)?;
    let bic = p_bicycle_space(maps.pair(), 2)?;
    let block_bic = p_bicycle_space(maps.block_pair(), 2)?;
    let ft_restricted = intersect(&kernel(&mod2(maps.ft())), &bic)?;
    let f_restricted = intersect(&kernel(&mod2(maps.f())), &block_bic)?;
    let s = fixed_spaces(maps)?;
    Ok(BicycleIdentification {
        phi_fixed_dim: phi_fixed.dim(),
        psi_fixed_dim: psi_fixed.dim(),
        coker_log2: log2_order(&torsion.coker_f),
        ker_log2: log2_order(&torsion.ker_f),
        ft_restriction_matches: ft_restricted == phi_fixed,
        f_restriction_matches: f_restricted == psi_fixed,
        phi_quotient_dim: s.ambient_phi - sum(&s.z_phi, &s.b_phi)?.dim(),
        psi_quotient_dim: s.ambient_psi - sum(&s.z_psi, &s.b_psi)?.dim(),
    })
}

/// `g(x, x') = f(x, 0)` on a `psi`-fixed vector.
fn g_apply(maps: &SymmetryMaps, f2: &ModpMatrix, x: &[u8]) -> Vec<u8> {
    let mut left = x.to_vec();
    for c in left.iter_mut().skip(maps.plus_edges()) {
        *c = 0;
    }
    f2.mul_vec(&left).expect("block ambient matches f")
}

/// The map `g` on `psi`-fixed bicycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GInjection {
    /// One row per basis vector of the `psi`-fixed bicycles.
    pub images: ModpMatrix,
    pub domain_dim: usize,
    pub kernel_dim: usize,
    pub image_in_phi_fixed: bool,
    /// `f(x, 0) = f(0, x')` on every basis vector.
    pub halves_agree: bool,
}

impl GInjection {
    pub fn injective(&self) -> bool {
        self.kernel_dim == 0
    }

    pub fn passed(&self) -> bool {
        self.injective() && self.image_in_phi_fixed && self.halves_agree
    }
}

pub fn g_injection(maps: &SymmetryMaps) -> Result<GInjection, SymmetryError> {
    let f2 = mod2(maps.f());
    let domain = psi_fixed_bicycles(maps)?;
    let target = phi_fixed_bicycles(maps)?;
    let n_plus = maps.plus_edges();
    let mut rows = Vec::new();
    let mut halves_agree = true;
    for x in domain.basis_vectors() {
        let image = g_apply(maps, &f2, &x);
        let mut right = x.clone();
        for c in right.iter_mut().take(n_plus) {
            *c = 0;
        }
        halves_agree &= f2.mul_vec(&right)? == image;
        rows.push(image.into_iter().map(u32::from).collect::<Vec<_>>());
    }
    let images = ModpMatrix::from_rows(2, maps.pair().c1_rank(), &rows)?;
    let image_in_phi_fixed = images.row_vectors().iter().all(|v| target.contains(v));
    Ok(GInjection {
        kernel_dim: domain.dim() - images.rank(),
        domain_dim: domain.dim(),
        images,
        image_in_phi_fixed,
        halves_agree,
    })
}

/// Dimensions in the two exact columns and the identities between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnakeReport {
    pub exponent: i64,
    pub right_vertices: usize,
    pub fixed_vertices: usize,
    pub fixed_edges: usize,
    pub ambient_psi: usize,
    pub ambient_phi: usize,
    pub z_psi: usize,
    pub b_psi: usize,
    pub z_phi: usize,
    pub b_phi: usize,
    pub cap_psi: usize,
    pub cap_phi: usize,
    pub sum_psi: usize,
    pub sum_phi: usize,
    pub ker_log2: Option<u32>,
    pub coker_log2: Option<u32>,
}

impl SnakeReport {
    /// `dim (B+ + B-)^psi = |V_R| + |E^phi|`
    pub fn bond_psi_formula(&self) -> bool {
        self.b_psi == self.right_vertices + self.fixed_edges
    }

    /// `dim B^phi = |V_R| + |V^phi| - 1`
    pub fn bond_phi_formula(&self) -> bool {
        self.b_phi as i64 == self.right_vertices as i64 + self.fixed_vertices as i64 - 1
    }

    /// `dim Z^phi - dim (Z+ + Z-)^psi = |V^phi| - |E^phi| - 1`
    pub fn cycle_formula(&self) -> bool {
        self.z_phi as i64 - self.z_psi as i64 == self.exponent
    }

    /// Both columns are exact: `dim(X + Y) = dim X + dim Y - dim(X ∩ Y)`.
    pub fn columns_exact(&self) -> bool {
        self.sum_psi + self.cap_psi == self.z_psi + self.b_psi
            && self.sum_phi + self.cap_phi == self.z_phi + self.b_phi
    }

    /// `dim` of the bottom-left minus bottom-right equals `log2 |ker| - log2 |coker|`.
    pub fn sum_ratio(&self) -> bool {
        match (self.ker_log2, self.coker_log2) {
            (Some(k), Some(c)) => self.sum_psi as i64 - self.sum_phi as i64 == k as i64 - c as i64,
            _ => false,
        }
    }

    /// `1 = 2^(2 exponent) (|ker| / |coker|)^2`
    pub fn alternating_product(&self) -> bool {
        match (self.ker_log2, self.coker_log2) {
            (Some(k), Some(c)) => 2 * self.exponent + 2 * (k as i64 - c as i64) == 0,
            _ => false,
        }
    }
}

pub fn snake_report(maps: &SymmetryMaps, torsion: &TwoTorsionReport) -> Result<SnakeReport, SymmetryError> {
    let g = maps.graph();
    let s = fixed_spaces(maps)?;
    Ok(SnakeReport {
        exponent: g.exponent(),
        right_vertices: g.vertices_on(Side::Right).len(),
        fixed_vertices: g.vertices_on(Side::Fixed).len(),
        fixed_edges: g.edges_on(Side::Fixed).len(),
        ambient_psi: s.ambient_psi,
        ambient_phi: s.ambient_phi,
        z_psi: s.z_psi.dim(),
        b_psi: s.b_psi.dim(),
        z_phi: s.z_phi.dim(),
        b_phi: s.b_phi.dim(),
        cap_psi: intersect(&s.z_psi, &s.b_psi)?.dim(),
        cap_phi: intersect(&s.z_phi, &s.b_phi)?.dim(),
        sum_psi: sum(&s.z_psi, &s.b_psi)?.dim(),
        sum_phi: sum(&s.z_phi, &s.b_phi)?.dim(),
        ker_log2: log2_order(&torsion.ker_f),
        coker_log2: log2_order(&torsion.coker_f),
    })
}

/// The cycles `z = p + phi(p)` joining consecutive components of the fixed
/// subgraph, and how they sit in `Z^phi / g((Z+ + Z-)^psi)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForSnake2Basis {
    /// Representative vertex ids, one per component of the fixed subgraph.
    pub representatives: Vec<String>,
    pub cycles: Vec<Vec<u8>>,
    pub in_fixed_cycles: bool,
    pub independent: bool,
    pub spans: bool,
    pub quotient_dim: usize,
}

impl ForSnake2Basis {
    pub fn passed(&self) -> bool {
        self.in_fixed_cycles && self.independent && self.spans
    }
}

/// Shortest path in `G+` by breadth-first search; neighbours are visited in
/// edge-id order. Returns `E+` indices.
fn bfs_path(g: &crate::graph::Multigraph, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut adj: Vec<Vec<(&str, usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    for (j, e) in g.edges().iter().enumerate() {
        adj[e.tail].push((&e.id, j, e.head));
        adj[e.head].push((&e.id, j, e.tail));
    }
    for list in &mut adj {
        list.sort();
    }
    let mut parent: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = Vec::new();
            let mut cur = to;
            while cur != from {
                let (prev, e) = parent[&cur];
                path.push(e);
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for &(_, e, w) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent.insert(w, (v, e));
                queue.push_back(w);
            }
        }
    }
    None
}

pub fn forsnake2_constructive_basis(maps: &SymmetryMaps) -> Result<ForSnake2Basis, SymmetryError> {
    let g = maps.graph();
    let dec = maps.decomposition();
    if !dec.plus.is_connected() {
        return Err(SymmetryError::Precondition("G+ is not connected"));
    }
    let comps = fixed_subgraph_components(g);
    if comps.count == 0 {
        return Err(SymmetryError::Precondition("no fixed vertices"));
    }
    let mut reps = vec![usize::MAX; comps.count];
    for (&v, &c) in &comps.component_of {
        reps[c] = reps[c].min(v);
    }
    let plus_index = |v: usize| {
        dec.plus_vertex_origin
            .iter()
            .position(|&o| o == Some(v))
            .expect("fixed vertices survive in G+")
    };

    let f2 = mod2(maps.f());
    let n = maps.block_edges();
    let mut cycles = Vec::new();
    for w in reps.windows(2) {
        let path = bfs_path(&dec.plus, plus_index(w[0]), plus_index(w[1]))
            .ok_or(SymmetryError::Internal("G+ connected but no path found"))?;
        let mut p = vec![0u8; n];
        for e in path {
            p[e] ^= 1;
        }
        cycles.push(f2.mul_vec(&p)?);
    }

    let d = mod2(maps.pair().d());
    let z_phi = fixed_subspace(maps.phi_edges(), &kernel(&d))?;
    let z_psi = fixed_subspace(maps.psi(), &kernel(&mod2(maps.block_pair().d())))?;
    let image: Vec<Vec<u8>> = z_psi
        .basis_vectors()
        .iter()
        .map(|x| g_apply(maps, &f2, x))
        .collect();
    let m = g.graph().edge_count();
    let image = ModpSubspace::span_vectors(2, m, &image)?;
    let with_z = sum(&image, &ModpSubspace::span_vectors(2, m, &cycles)?)?;
    Ok(ForSnake2Basis {
        representatives: reps.iter().map(|&v| g.graph().vertices()[v].clone()).collect(),
        in_fixed_cycles: cycles.iter().all(|z| z_phi.contains(z)),
        independent: with_z.dim() == image.dim() + cycles.len(),
        spans: with_z.dim() == z_phi.dim(),
        quotient_dim: sum(&image, &z_phi)?.dim() - image.dim(),
        cycles,
    })
}
