//! Exact polyhedral geometry in the real Picard space: cones with generator
//! and facet descriptions, the forbidden cones, the Thomsen zonotope with its
//! closed/interior/half-open membership tests, and sign-cell enumeration for
//! central hyperplane arrangements.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::lp::{lattice_points, lp_feasible, LatticePoints, LinearSystem, LpOutcome};
use crate::matrix::{canonical_sign_vector, kernel_basis, primitive_integer_vector, IntMatrix};
use crate::picard::{DivisorClass, PicardData};
use crate::{Int, Rat};

pub(crate) fn int_rat_dot(a: &[Int], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot product dimension mismatch");
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += Rat::from_integer(x.clone()) * y;
    }
    acc
}

pub(crate) fn rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// Polyhedral cone in `Q^ambient` with both descriptions: the generators it
/// was built from and an irredundant list of linear functionals `g` with
/// `cone = {x : g(x) >= 0 for all g}`. Lower-dimensional cones carry pairs
/// `±g` for the equations cutting out their span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    generators: Vec<Vec<Rat>>,
    facets: Vec<Vec<Int>>,
    dim: usize,
    lineality_dim: usize,
}

impl Cone {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    pub fn facets(&self) -> &[Vec<Int>] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality_dim
    }

    pub fn is_full_dim(&self) -> bool {
        self.dim == self.ambient
    }

    /// Contains no line.
    pub fn is_strongly_convex(&self) -> bool {
        self.lineality_dim == 0
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        assert_eq!(point.len(), self.ambient, "point dimension mismatch");
        self.facets
            .iter()
            .all(|g| !int_rat_dot(g, point).is_negative())
    }

    /// Topological interior in the ambient space: empty for cones of less
    /// than full dimension, otherwise all facets strictly positive.
    pub fn interior_contains(&self, point: &[Rat]) -> bool {
        assert_eq!(point.len(), self.ambient, "point dimension mismatch");
        if !self.is_full_dim() {
            return false;
        }
        self.facets
            .iter()
            .all(|g| int_rat_dot(g, point).is_positive())
    }
}

/// Dualize a generator description into an irredundant facet description by
/// projecting `{x = sum λ_i g_i, λ >= 0}` onto `x` and pruning implied
/// inequalities with exact LP. Facets are primitive integer functionals,
/// sorted lexicographically.
pub fn cone_from_generators(ambient: usize, generators: &[Vec<Rat>]) -> Cone {
    assert!(ambient >= 1, "ambient dimension must be at least 1");
    let mut gens: Vec<Vec<Rat>> = Vec::new();
    for g in generators {
        assert_eq!(g.len(), ambient, "generator dimension mismatch");
        if g.iter().all(Rat::is_zero) {
            continue;
        }
        if !gens.contains(g) {
            gens.push(g.clone());
        }
    }

    let m = gens.len();
    let mut sys = LinearSystem::new(ambient + m);
    for coord in 0..ambient {
        let mut coeffs = vec![Rat::zero(); ambient + m];
        coeffs[coord] = Rat::one();
        for (j, g) in gens.iter().enumerate() {
            coeffs[ambient + j] = -g[coord].clone();
        }
        sys.eq(coeffs, Rat::zero());
    }
    for j in 0..m {
        let mut coeffs = vec![Rat::zero(); ambient + m];
        coeffs[ambient + j] = Rat::one();
        sys.ge(coeffs, Rat::zero());
    }
    let projected = crate::lp::project_to_prefix(&sys, ambient)
        .expect("cone membership system is feasible at the origin");

    let mut functionals: BTreeSet<Vec<Int>> = BTreeSet::new();
    for c in projected {
        debug_assert!(c.rhs.is_zero(), "cone H-representation must be homogeneous");
        let g = primitive_integer_vector(&c.coeffs);
        if g.iter().all(Int::is_zero) {
            continue;
        }
        match c.relation {
            crate::lp::Relation::Eq => {
                functionals.insert(g.iter().map(|x| -x.clone()).collect());
                functionals.insert(g);
            }
            _ => {
                functionals.insert(g);
            }
        }
    }

    let mut facets: Vec<Vec<Int>> = functionals.into_iter().collect();
    prune_implied_facets(ambient, &mut facets);

    let gen_rank = if gens.is_empty() {
        0
    } else {
        IntMatrix::from_rows(gens.iter().map(|g| primitive_integer_vector(g)).collect())
            .rank()
    };
    let facet_rank = if facets.is_empty() {
        0
    } else {
        IntMatrix::from_rows(facets.clone()).rank()
    };

    Cone {
        ambient,
        generators: gens,
        facets,
        dim: gen_rank,
        lineality_dim: ambient - facet_rank,
    }
}

/// Remove functionals implied by the rest: `g` is redundant iff
/// `{h·x >= 0 for h != g} ∧ {g·x < 0}` is infeasible.
fn prune_implied_facets(ambient: usize, facets: &mut Vec<Vec<Int>>) {
    let mut i = 0;
    while i < facets.len() {
        let mut sys = LinearSystem::new(ambient);
        for (j, h) in facets.iter().enumerate() {
            if j != i {
                sys.ge(rat_vec(h), Rat::zero());
            }
        }
        let neg: Vec<Rat> = facets[i]
            .iter()
            .map(|x| Rat::from_integer(-x.clone()))
            .collect();
        sys.gt(neg, Rat::zero());
        if lp_feasible(&sys).is_feasible() {
            i += 1;
        } else {
            facets.remove(i);
        }
    }
}

/// Forbidden-cone data for a ray subset `I`: apex `q_I = class(-1_I)` and the
/// cone spanned by the real ray classes, negated on `I`.
#[derive(Clone, Debug)]
pub struct ForbiddenCone {
    pub subset: Vec<usize>,
    pub apex_class: DivisorClass,
    pub apex_real: Vec<Rat>,
    pub cone: Cone,
}

pub fn forbidden_cone(picdata: &PicardData, subset: &[usize]) -> ForbiddenCone {
    let n = picdata.ray_count();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let mut indicator = vec![Int::zero(); n];
    for &i in &sorted {
        indicator[i] = Int::from(-1);
    }
    let apex_class = picdata.class_of(&indicator).expect("length matches");
    let apex_real = picdata.real_image(&apex_class).coords;
    let generators: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let e = &picdata.ray_reals()[i];
            if sorted.contains(&i) {
                e.iter().map(|x| -x.clone()).collect()
            } else {
                e.clone()
            }
        })
        .collect();
    let cone = cone_from_generators(picdata.rank(), &generators);
    ForbiddenCone {
        subset: sorted,
        apex_class,
        apex_real,
        cone,
    }
}

impl ForbiddenCone {
    /// Membership of a point in the translated cone `q_I + C_I`.
    pub fn translated_contains(&self, point: &[Rat]) -> bool {
        let shifted: Vec<Rat> = point
            .iter()
            .zip(&self.apex_real)
            .map(|(p, q)| p - q)
            .collect();
        self.cone.contains(&shifted)
    }
}

// ---------------------------------------------------------------------------
// Thomsen zonotope
// ---------------------------------------------------------------------------

/// Membership region: the closure `Z`, the interior `Z°`, or the half-open
/// set `{sum γ_i Ē_i : γ_i ∈ (-1, 0]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZonotopeRegion {
    Closed,
    Interior,
    HalfOpen,
}

/// The Minkowski sum of the segments `[-1, 0] Ē_i`, with support-function
/// facets, the exact vertex list, and the center of symmetry.
#[derive(Clone, Debug)]
pub struct Zonotope {
    ambient: usize,
    generators: Vec<Vec<Rat>>,
    support_facets: Vec<(Vec<Int>, Rat)>,
    vertices: Vec<Vec<Rat>>,
    center: Vec<Rat>,
}

pub fn zonotope(picdata: &PicardData) -> Zonotope {
    let r = picdata.rank();
    let gens: Vec<Vec<Rat>> = picdata.ray_reals().to_vec();

    // Distinct generator lines, canonically signed; per-generator orientation.
    let mut lines: Vec<Vec<Int>> = Vec::new();
    let mut orientation: Vec<Option<(usize, i8)>> = Vec::new();
    for g in &gens {
        if g.iter().all(Rat::is_zero) {
            orientation.push(None);
            continue;
        }
        let canon = canonical_sign_vector(g);
        let pos = match lines.iter().position(|l| *l == canon) {
            Some(p) => p,
            None => {
                lines.push(canon.clone());
                lines.len() - 1
            }
        };
        let k = canon.iter().position(|x| !x.is_zero()).expect("nonzero");
        let sign = if g[k].is_positive() == canon[k].is_positive() {
            1i8
        } else {
            -1
        };
        orientation.push(Some((pos, sign)));
    }

    // Candidate facet normals: kernels of (r-1)-subsets of the lines.
    let mut normals: BTreeSet<Vec<Int>> = BTreeSet::new();
    if r == 1 {
        normals.insert(vec![Int::one()]);
        normals.insert(vec![-Int::one()]);
    } else {
        for subset in k_subsets(lines.len(), r - 1) {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| rat_vec(&lines[i])).collect();
            let kernel = kernel_basis(&rows, r);
            if kernel.len() != 1 {
                continue;
            }
            let n = primitive_integer_vector(&kernel[0]);
            normals.insert(n.iter().map(|x| -x.clone()).collect());
            normals.insert(n);
        }
    }

    let support = |c: &[Int]| -> Rat {
        let mut acc = Rat::zero();
        for g in &gens {
            let v = -int_rat_dot(c, g);
            if v.is_positive() {
                acc += v;
            }
        }
        acc
    };
    let mut support_facets: Vec<(Vec<Int>, Rat)> = normals
        .into_iter()
        .map(|c| {
            let h = support(&c);
            (c, h)
        })
        .collect();
    prune_implied_support(r, &mut support_facets);

    // Vertices: every open sign cell of the line arrangement selects the
    // segment endpoints maximizing that direction.
    let line_rats: Vec<Vec<Rat>> = lines.iter().map(|l| rat_vec(l)).collect();
    let mut vertices: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for_each_sign_cell(&line_rats, r, false, u64::MAX, &mut |cell| {
        let mut v = vec![Rat::zero(); r];
        for (g, orient) in gens.iter().zip(&orientation) {
            let Some((line, sign)) = orient else { continue };
            let s = cell.signs[*line] * sign;
            if s < 0 {
                for (acc, x) in v.iter_mut().zip(g) {
                    *acc -= x;
                }
            }
        }
        vertices.insert(v);
        true
    })
    .expect("no cell cap in zonotope vertex enumeration");

    let mut center = vec![Rat::zero(); r];
    let half = Rat::new(Int::from(-1), Int::from(2));
    for g in &gens {
        for (acc, x) in center.iter_mut().zip(g) {
            *acc += &half * x;
        }
    }

    Zonotope {
        ambient: r,
        generators: gens,
        support_facets,
        vertices: vertices.into_iter().collect(),
        center,
    }
}

fn prune_implied_support(ambient: usize, facets: &mut Vec<(Vec<Int>, Rat)>) {
    let mut i = 0;
    while i < facets.len() {
        let mut sys = LinearSystem::new(ambient);
        for (j, (c, h)) in facets.iter().enumerate() {
            if j != i {
                // c·x <= h  as  -c·x >= -h
                let coeffs: Vec<Rat> =
                    c.iter().map(|x| Rat::from_integer(-x.clone())).collect();
                sys.ge(coeffs, -h.clone());
            }
        }
        let (c, h) = &facets[i];
        sys.gt(rat_vec(c), h.clone());
        if lp_feasible(&sys).is_feasible() {
            i += 1;
        } else {
            facets.remove(i);
        }
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

impl Zonotope {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    /// Facet inequalities `normal · x <= offset`.
    pub fn support_facets(&self) -> &[(Vec<Int>, Rat)] {
        &self.support_facets
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn center(&self) -> &[Rat] {
        &self.center
    }

    /// Exact membership. The half-open region is decided as a feasibility
    /// problem in the segment coordinates γ — it is not an intersection of
    /// half-open half-spaces, so no facet trick applies.
    pub fn contains(&self, point: &[Rat], region: ZonotopeRegion) -> bool {
        assert_eq!(point.len(), self.ambient, "point dimension mismatch");
        match region {
            ZonotopeRegion::Closed => self
                .support_facets
                .iter()
                .all(|(c, h)| int_rat_dot(c, point) <= *h),
            ZonotopeRegion::Interior => self
                .support_facets
                .iter()
                .all(|(c, h)| int_rat_dot(c, point) < *h),
            ZonotopeRegion::HalfOpen => {
                let n = self.generators.len();
                let mut sys = LinearSystem::new(n);
                for coord in 0..self.ambient {
                    let coeffs: Vec<Rat> = self
                        .generators
                        .iter()
                        .map(|g| g[coord].clone())
                        .collect();
                    sys.eq(coeffs, point[coord].clone());
                }
                for j in 0..n {
                    let mut lo = vec![Rat::zero(); n];
                    lo[j] = Rat::one();
                    sys.gt(lo, -Rat::one()); // γ_j > -1
                    let mut hi = vec![Rat::zero(); n];
                    hi[j] = -Rat::one();
                    sys.ge(hi, Rat::zero()); // γ_j <= 0
                }
                lp_feasible(&sys).is_feasible()
            }
        }
    }
}

/// All divisor classes whose real image lies in the requested region:
/// integer points of the free part inside the bounding box of `Z`, filtered
/// by membership, with every torsion residue attached.
pub fn zonotope_classes(
    picdata: &PicardData,
    z: &Zonotope,
    region: ZonotopeRegion,
) -> Vec<DivisorClass> {
    let r = z.ambient();
    if z.vertices.is_empty() {
        return Vec::new();
    }
    let mut lo = vec![Int::zero(); r];
    let mut hi = vec![Int::zero(); r];
    for j in 0..r {
        let mut min = z.vertices[0][j].clone();
        let mut max = z.vertices[0][j].clone();
        for v in &z.vertices {
            if v[j] < min {
                min = v[j].clone();
            }
            if v[j] > max {
                max = v[j].clone();
            }
        }
        lo[j] = min.ceil().to_integer();
        hi[j] = max.floor().to_integer();
    }

    let torsion_tuples = all_torsion_tuples(picdata.torsion_invariants());
    let mut out = Vec::new();
    let mut point = Vec::with_capacity(r);
    enumerate_box(&lo, &hi, 0, &mut point, &mut |p: &[Int]| {
        let rats = rat_vec(p);
        if z.contains(&rats, region) {
            for t in &torsion_tuples {
                out.push(DivisorClass {
                    free: p.to_vec(),
                    torsion: t.clone(),
                });
            }
        }
    });
    out
}

pub(crate) fn all_torsion_tuples(invariants: &[Int]) -> Vec<Vec<Int>> {
    let mut tuples: Vec<Vec<Int>> = vec![Vec::new()];
    for t in invariants {
        let mut next = Vec::new();
        for prefix in &tuples {
            let mut residue = Int::zero();
            while &residue < t {
                let mut tuple = prefix.clone();
                tuple.push(residue.clone());
                next.push(tuple);
                residue += Int::one();
            }
        }
        tuples = next;
    }
    tuples
}

fn enumerate_box(
    lo: &[Int],
    hi: &[Int],
    level: usize,
    point: &mut Vec<Int>,
    visit: &mut impl FnMut(&[Int]),
) {
    if level == lo.len() {
        visit(point);
        return;
    }
    let mut t = lo[level].clone();
    while t <= hi[level] {
        point.push(t.clone());
        enumerate_box(lo, hi, level + 1, point, visit);
        point.pop();
        t += Int::one();
    }
}

/// Checks that the forbidden-cone apex `q_I` is a vertex of `Z` and that
/// `Z ⊆ q_I - C_I` (every vertex of `Z` lands in the reflected cone).
pub fn vertex_check(z: &Zonotope, fc: &ForbiddenCone) -> bool {
    let is_vertex = z.vertices.contains(&fc.apex_real);
    let contained = z.vertices.iter().all(|v| {
        let shifted: Vec<Rat> = fc
            .apex_real
            .iter()
            .zip(v)
            .map(|(q, x)| q - x)
            .collect();
        fc.cone.contains(&shifted)
    });
    is_vertex && contained
}

// ---------------------------------------------------------------------------
// Sign-cell enumeration of central arrangements
// ---------------------------------------------------------------------------

/// A nonempty sign cell of a central arrangement, with a nonzero sample
/// point realizing the signs.
#[derive(Clone, Debug)]
pub struct SignCell {
    pub signs: Vec<i8>,
    pub sample: Vec<Rat>,
}

/// Depth-first enumeration of the nonempty sign cells of the central
/// arrangement of `normals`, in deterministic order (signs tried as
/// 0, +, - per hyperplane when `with_boundary`, else +, -). The cell whose
/// only point is the origin is skipped; samples are always nonzero. The
/// visitor returns `false` to stop early; `max_cells` caps the enumeration.
pub fn for_each_sign_cell(
    normals: &[Vec<Rat>],
    dim: usize,
    with_boundary: bool,
    max_cells: u64,
    visit: &mut dyn FnMut(&SignCell) -> bool,
) -> Result<bool, Error> {
    let mut signs: Vec<i8> = Vec::with_capacity(normals.len());
    let mut visited: u64 = 0;
    dfs_cells(normals, dim, with_boundary, max_cells, &mut signs, &mut visited, visit)
}

fn dfs_cells(
    normals: &[Vec<Rat>],
    dim: usize,
    with_boundary: bool,
    max_cells: u64,
    signs: &mut Vec<i8>,
    visited: &mut u64,
    visit: &mut dyn FnMut(&SignCell) -> bool,
) -> Result<bool, Error> {
    let level = signs.len();
    if level == normals.len() {
        let sample = if signs.iter().all(|&s| s == 0) {
            // lineality cell: a kernel vector, or only the origin
            match kernel_basis(normals, dim).into_iter().next() {
                Some(v) => v,
                None => return Ok(true),
            }
        } else {
            match lp_feasible(&sign_system(normals, dim, signs)) {
                LpOutcome::Feasible(p) => p,
                LpOutcome::Infeasible(_) => unreachable!("prefix was checked feasible"),
            }
        };
        *visited += 1;
        if *visited > max_cells {
            return Err(Error::CellLimitExceeded { limit: max_cells });
        }
        let cell = SignCell {
            signs: signs.clone(),
            sample,
        };
        return Ok(visit(&cell));
    }

    let options: &[i8] = if with_boundary { &[0, 1, -1] } else { &[1, -1] };
    for &s in options {
        signs.push(s);
        let feasible = if signs.iter().all(|&x| x == 0) {
            true
        } else {
            lp_feasible(&sign_system(&normals[..signs.len()], dim, signs)).is_feasible()
        };
        if feasible {
            let keep_going =
                dfs_cells(normals, dim, with_boundary, max_cells, signs, visited, visit)?;
            if !keep_going {
                signs.pop();
                return Ok(false);
            }
        }
        signs.pop();
    }
    Ok(true)
}

fn sign_system(normals: &[Vec<Rat>], dim: usize, signs: &[i8]) -> LinearSystem {
    let mut sys = LinearSystem::new(dim);
    for (h, &s) in normals.iter().zip(signs) {
        match s {
            0 => sys.eq(h.clone(), Rat::zero()),
            1 => sys.gt(h.clone(), Rat::zero()),
            _ => sys.gt(h.iter().map(|x| -x.clone()).collect(), Rat::zero()),
        }
    }
    sys
}

/// Integer points of a system expected to be bounded.
pub(crate) fn bounded_lattice_points(sys: &LinearSystem) -> Result<Option<Vec<Vec<Int>>>, Error> {
    match lattice_points(sys)? {
        LatticePoints::Points(p) => Ok(Some(p)),
        LatticePoints::Unbounded => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::builtins;
    use crate::homology::tempting_sets;
    use crate::picard::picard_group;
    use crate::{int, rat};

    fn rv(v: Vec<i64>) -> Vec<Rat> {
        v.into_iter().map(rat).collect()
    }

    #[test]
    fn quadrant_facets() {
        let cone = cone_from_generators(2, &[rv(vec![1, 0]), rv(vec![0, 1])]);
        assert_eq!(cone.facets(), &[vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(cone.dim(), 2);
        assert!(cone.is_strongly_convex());
        assert!(cone.interior_contains(&rv(vec![1, 1])));
        assert!(!cone.interior_contains(&rv(vec![1, 0])));
        assert!(cone.contains(&rv(vec![1, 0])));
    }

    #[test]
    fn halfplane_has_lineality() {
        let cone =
            cone_from_generators(2, &[rv(vec![1, 0]), rv(vec![-1, 0]), rv(vec![0, 1])]);
        assert_eq!(cone.facets(), &[vec![int(0), int(1)]]);
        assert_eq!(cone.lineality_dim(), 1);
        assert!(!cone.is_strongly_convex());
        assert!(cone.is_full_dim());
    }

    #[test]
    fn skew_cone_facets() {
        let cone =
            cone_from_generators(2, &[rv(vec![-1, 0]), rv(vec![1, 1]), rv(vec![0, 1])]);
        // facets y >= 0 and y - x >= 0
        assert_eq!(cone.facets(), &[vec![int(-1), int(1)], vec![int(0), int(1)]]);
    }

    #[test]
    fn ray_in_plane_is_not_full_dim() {
        let cone = cone_from_generators(2, &[rv(vec![1, 0])]);
        assert_eq!(cone.dim(), 1);
        assert!(!cone.interior_contains(&rv(vec![1, 0])));
        assert!(cone.contains(&rv(vec![1, 0])));
        assert!(!cone.contains(&rv(vec![-1, 0])));
        assert!(cone.is_strongly_convex());
    }

    #[test]
    fn zero_cone() {
        let cone = cone_from_generators(2, &[]);
        assert_eq!(cone.dim(), 0);
        assert!(cone.contains(&rv(vec![0, 0])));
        assert!(!cone.contains(&rv(vec![1, 0])));
    }

    #[test]
    fn full_space_cone() {
        let cone = cone_from_generators(1, &[rv(vec![1]), rv(vec![-1])]);
        assert!(cone.facets().is_empty());
        assert_eq!(cone.lineality_dim(), 1);
        assert!(cone.interior_contains(&rv(vec![5])));
    }

    #[test]
    fn forbidden_cones_on_p1() {
        let pic = picard_group(&builtins::projective_space(1).unwrap());
        let empty = forbidden_cone(&pic, &[]);
        assert!(empty.apex_class.is_zero());
        assert!(empty.cone.contains(&rv(vec![1])));
        assert!(!empty.cone.contains(&rv(vec![-1])));

        let full = forbidden_cone(&pic, &[0, 1]);
        let g = pic.ray_classes()[0].clone();
        assert_eq!(full.apex_class, pic.class_scale(&int(-2), &g));
        assert!(full.cone.contains(&rv(vec![-1])));
        assert!(!full.cone.contains(&rv(vec![1])));
    }

    #[test]
    fn forbidden_cone_on_p1xp1_pair() {
        let p1 = builtins::projective_space(1).unwrap();
        let pic = picard_group(&builtins::product(&p1, &p1));
        let fc = forbidden_cone(&pic, &[0, 1]);
        // q = -E_0 - E_1 = -2 Ē_0 in the real space
        let expected: Vec<Rat> = pic.ray_reals()[0].iter().map(|x| x * rat(-2)).collect();
        assert_eq!(fc.apex_real, expected);
        // cone spanned by -Ē_0 and Ē_2
        let e0 = &pic.ray_reals()[0];
        let e2 = &pic.ray_reals()[2];
        let minus_e0: Vec<Rat> = e0.iter().map(|x| -x.clone()).collect();
        assert!(fc.cone.contains(&minus_e0));
        assert!(fc.cone.contains(e2));
        assert!(!fc.cone.contains(e0));
    }

    #[test]
    fn strongly_convex_for_all_tempting_subsets() {
        for fan in [
            builtins::projective_space(2).unwrap(),
            builtins::hirzebruch(1).unwrap(),
            builtins::product(
                &builtins::projective_space(1).unwrap(),
                &builtins::projective_space(1).unwrap(),
            ),
            builtins::product(
                &builtins::stacky_p1(2, 3).unwrap(),
                &builtins::projective_space(1).unwrap(),
            ),
        ] {
            let pic = picard_group(&fan);
            let catalog = tempting_sets(&fan).unwrap();
            for (subset, _) in catalog.iter() {
                let fc = forbidden_cone(&pic, subset);
                assert!(
                    fc.cone.is_strongly_convex(),
                    "C_I not strongly convex for {:?} on {:?}",
                    subset,
                    fan.name()
                );
                // dualization round trip: every generator satisfies the facets
                for g in fc.cone.generators() {
                    assert!(fc.cone.contains(g));
                }
            }
        }
    }

    #[test]
    fn zonotope_of_p1_is_an_interval() {
        let pic = picard_group(&builtins::projective_space(1).unwrap());
        let z = zonotope(&pic);
        assert_eq!(z.vertices().len(), 2);
        assert!(z.contains(&rv(vec![-1]), ZonotopeRegion::Interior));
        assert!(!z.contains(&rv(vec![0]), ZonotopeRegion::Interior));
        assert!(z.contains(&rv(vec![0]), ZonotopeRegion::Closed));
        // γ = (0,0) realizes 0; -2 needs γ = (-1,-1) which is excluded
        assert!(z.contains(&rv(vec![0]), ZonotopeRegion::HalfOpen));
        assert!(!z.contains(&rv(vec![-2]), ZonotopeRegion::HalfOpen));
        assert!(z.contains(&rv(vec![-2]), ZonotopeRegion::Closed));
    }

    #[test]
    fn zonotope_of_p1xp1_is_a_square() {
        let p1 = builtins::projective_space(1).unwrap();
        let pic = picard_group(&builtins::product(&p1, &p1));
        let z = zonotope(&pic);
        assert_eq!(z.vertices().len(), 4);
        assert_eq!(z.support_facets().len(), 4);
        // central symmetry: reflection through the center permutes vertices
        for v in z.vertices() {
            let reflected: Vec<Rat> = z
                .center()
                .iter()
                .zip(v)
                .map(|(c, x)| c * rat(2) - x)
                .collect();
            assert!(z.vertices().contains(&reflected));
        }
    }

    #[test]
    fn zonotope_classes_examples() {
        let p1 = builtins::projective_space(1).unwrap();

        let pic = picard_group(&p1);
        let z = zonotope(&pic);
        let interior = zonotope_classes(&pic, &z, ZonotopeRegion::Interior);
        assert_eq!(interior.len(), 1);
        assert_eq!(interior[0].free, vec![int(-1)]);

        let pic2 = picard_group(&builtins::product(&p1, &p1));
        let z2 = zonotope(&pic2);
        let interior2 = zonotope_classes(&pic2, &z2, ZonotopeRegion::Interior);
        assert_eq!(interior2.len(), 1);
        assert_eq!(interior2[0].free, vec![int(-1), int(-1)]);

        let pic3 = picard_group(&builtins::projective_space(2).unwrap());
        let z3 = zonotope(&pic3);
        let half3 = zonotope_classes(&pic3, &z3, ZonotopeRegion::HalfOpen);
        let mut degrees: Vec<Int> = half3.into_iter().map(|c| c.free[0].clone()).collect();
        degrees.sort();
        // the half-open zonotope of P^2 catches degrees -2, -1, 0
        assert_eq!(degrees, vec![int(-2), int(-1), int(0)]);
    }

    #[test]
    fn vertex_check_examples() {
        let p1 = builtins::projective_space(1).unwrap();
        let pic = picard_group(&p1);
        let z = zonotope(&pic);
        assert!(vertex_check(&z, &forbidden_cone(&pic, &[0, 1])));
        assert!(vertex_check(&z, &forbidden_cone(&pic, &[])));

        let pic2 = picard_group(&builtins::product(&p1, &p1));
        let z2 = zonotope(&pic2);
        assert!(vertex_check(&z2, &forbidden_cone(&pic2, &[0, 1])));
        // {0} is not tempting and q_{0} = (-1, 0) is not a vertex of the square
        assert!(!vertex_check(&z2, &forbidden_cone(&pic2, &[0])));
    }

    #[test]
    fn sign_cells_of_two_lines() {
        let normals = vec![rv(vec![1, 0]), rv(vec![0, 1])];
        let mut cells = Vec::new();
        for_each_sign_cell(&normals, 2, true, 1_000, &mut |cell| {
            cells.push(cell.signs.clone());
            true
        })
        .unwrap();
        // 3^2 sign vectors minus the all-zero cell (origin only)
        assert_eq!(cells.len(), 8);
        assert_eq!(cells[0], vec![0, 1]);
    }

    #[test]
    fn sign_cells_respect_cap() {
        let normals = vec![rv(vec![1, 0]), rv(vec![0, 1])];
        let result = for_each_sign_cell(&normals, 2, true, 3, &mut |_| true);
        assert!(matches!(result, Err(Error::CellLimitExceeded { .. })));
    }

    #[test]
    fn lineality_cell_gets_nonzero_sample() {
        // one hyperplane in Q^2: the zero cell is the hyperplane itself
        let normals = vec![rv(vec![1, 0])];
        let mut found_zero_cell = false;
        for_each_sign_cell(&normals, 2, true, 1_000, &mut |cell| {
            if cell.signs == vec![0] {
                found_zero_cell = true;
                assert!(cell.sample.iter().any(|x| !x.is_zero()));
            }
            true
        })
        .unwrap();
        assert!(found_zero_cell);
    }
}
