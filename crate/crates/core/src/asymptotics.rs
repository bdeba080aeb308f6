//! Asymptotics of the immaculate set: deciding whether infinitely many
//! immaculate classes exist (a line through the origin avoiding every
//! full-dimensional forbidden-cone interior), describing the set of
//! asymptotic directions, constructing explicit infinite immaculate
//! families along witness lines, and the piecewise-linear hull sufficient
//! condition checkable directly on the fan.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, Zero};

use crate::cohomology::is_immaculate;
use crate::error::Error;
use crate::fan::StackyFan;
use crate::homology::TemptingCatalog;
use crate::matrix::{
    canonical_sign_vector, primitive_integer_vector, solve_rational, IntMatrix,
};
use crate::picard::{DivisorClass, PicardData};
use crate::polyhedra::{
    for_each_sign_cell, forbidden_cone, rat_vec, zonotope, zonotope_classes, ForbiddenCone,
    ZonotopeRegion,
};
use crate::{Int, Rat};

/// Default cap on arrangement cells visited by [`decide_infinite`].
pub const DEFAULT_CELL_LIMIT: u64 = 1 << 20;

/// A point of the projective space of directions: primitive integer vector
/// with the first nonzero coordinate positive, so `[v] = [-v]` has a single
/// representation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction {
    vector: Vec<Int>,
}

impl Direction {
    pub fn new(vector: Vec<Int>) -> Result<Self, Error> {
        let rats: Vec<Rat> = vector.iter().cloned().map(Rat::from_integer).collect();
        Self::from_rationals(&rats)
    }

    pub fn from_rationals(coords: &[Rat]) -> Result<Self, Error> {
        if coords.iter().all(Rat::is_zero) {
            return Err(Error::InvalidParameters(
                "a direction must be a nonzero vector".into(),
            ));
        }
        Ok(Direction {
            vector: canonical_sign_vector(coords),
        })
    }

    pub fn vector(&self) -> &[Int] {
        &self.vector
    }

    pub fn rationals(&self) -> Vec<Rat> {
        rat_vec(&self.vector)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.vector.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Forbidden cones of all tempting subsets, in catalog order.
pub fn forbidden_cones(picdata: &PicardData, catalog: &TemptingCatalog) -> Vec<ForbiddenCone> {
    catalog
        .iter()
        .map(|(subset, _)| forbidden_cone(picdata, subset))
        .collect()
}

/// Whether the direction avoids the interior of every full-dimensional
/// translated forbidden cone, on both ends of its line. For strongly convex
/// full-dimensional cones the interior of the cone at infinity is exactly
/// the image of `C° ∪ -C°`, and lower-dimensional cones contribute nothing.
pub fn asymptotically_immaculate(cones: &[ForbiddenCone], direction: &Direction) -> bool {
    let v = direction.rationals();
    let neg: Vec<Rat> = v.iter().map(|x| -x.clone()).collect();
    cones.iter().all(|fc| {
        !fc.cone.is_full_dim()
            || (!fc.cone.interior_contains(&v) && !fc.cone.interior_contains(&neg))
    })
}

/// One entry of the finiteness certificate: an arrangement cell together
/// with tempting subsets whose cone interiors absorb the two ends of the
/// line through its sample point.
#[derive(Clone, Debug)]
pub struct CellCertificate {
    pub signs: Vec<i8>,
    pub sample: Vec<Rat>,
    pub positive_cover: Vec<usize>,
    pub negative_cover: Vec<usize>,
}

/// Outcome of the infinitude decision: a verifiable witness direction, or a
/// per-cell covering certificate over the facet arrangement.
#[derive(Clone, Debug)]
pub enum InfinityReport {
    Infinite {
        witness: Direction,
    },
    Finite {
        hyperplanes: Vec<Vec<Int>>,
        cells: Vec<CellCertificate>,
    },
}

impl InfinityReport {
    pub fn is_infinite(&self) -> bool {
        matches!(self, InfinityReport::Infinite { .. })
    }
}

struct IndexedCone<'a> {
    cone: &'a ForbiddenCone,
    /// facet as (hyperplane index, orientation)
    facet_refs: Vec<(usize, i8)>,
}

impl IndexedCone<'_> {
    /// Sign-pattern membership of the whole cell in the open cone.
    fn interior_covers(&self, signs: &[i8]) -> bool {
        self.facet_refs
            .iter()
            .all(|&(j, orient)| orient * signs[j] > 0)
    }
}

/// Decides whether the immaculate set is infinite by enumerating the sign
/// cells of the central arrangement spanned by all facet normals of the
/// full-dimensional tempting cones. The first cell (in deterministic order)
/// whose line avoids every cone interior yields the witness.
pub fn decide_infinite(
    picdata: &PicardData,
    catalog: &TemptingCatalog,
    max_cells: u64,
) -> Result<InfinityReport, Error> {
    let cones = forbidden_cones(picdata, catalog);
    decide_infinite_with_cones(picdata, &cones, max_cells)
}

pub fn decide_infinite_with_cones(
    picdata: &PicardData,
    cones: &[ForbiddenCone],
    max_cells: u64,
) -> Result<InfinityReport, Error> {
    let r = picdata.rank();
    let full_dim: Vec<&ForbiddenCone> = cones.iter().filter(|c| c.cone.is_full_dim()).collect();

    let mut hyper_set: BTreeSet<Vec<Int>> = BTreeSet::new();
    for fc in &full_dim {
        for g in fc.cone.facets() {
            hyper_set.insert(canonical_sign_vector(&rat_vec(g)));
        }
    }
    let hyperplanes: Vec<Vec<Int>> = hyper_set.into_iter().collect();
    let indexed: Vec<IndexedCone> = full_dim
        .iter()
        .map(|fc| {
            let facet_refs = fc
                .cone
                .facets()
                .iter()
                .map(|g| {
                    let canon = canonical_sign_vector(&rat_vec(g));
                    let j = hyperplanes
                        .binary_search(&canon)
                        .expect("facet normal registered");
                    let orient = if *g == canon { 1i8 } else { -1 };
                    (j, orient)
                })
                .collect();
            IndexedCone { cone: fc, facet_refs }
        })
        .collect();

    let normals: Vec<Vec<Rat>> = hyperplanes.iter().map(|h| rat_vec(h)).collect();
    let mut witness: Option<Direction> = None;
    let mut cells: Vec<CellCertificate> = Vec::new();
    let mut failure: Option<Error> = None;
    for_each_sign_cell(&normals, r, true, max_cells, &mut |cell| {
        let neg_signs: Vec<i8> = cell.signs.iter().map(|&s| -s).collect();
        let pos_cover = indexed.iter().find(|c| c.interior_covers(&cell.signs));
        let neg_cover = indexed.iter().find(|c| c.interior_covers(&neg_signs));
        match (pos_cover, neg_cover) {
            (None, None) => {
                witness =
                    Some(Direction::from_rationals(&cell.sample).expect("sample is nonzero"));
                false
            }
            (Some(p), Some(n)) => {
                cells.push(CellCertificate {
                    signs: cell.signs.clone(),
                    sample: cell.sample.clone(),
                    positive_cover: p.cone.subset.clone(),
                    negative_cover: n.cone.subset.clone(),
                });
                true
            }
            _ => {
                // Complement symmetry of tempting cones makes one-sided
                // coverage impossible; reaching this is a bug.
                failure = Some(Error::Inconsistency(
                    "one-sided cone coverage contradicts complement symmetry".into(),
                ));
                false
            }
        }
    })?;
    if let Some(err) = failure {
        return Err(err);
    }
    match witness {
        Some(w) => Ok(InfinityReport::Infinite { witness: w }),
        None => Ok(InfinityReport::Finite { hyperplanes, cells }),
    }
}

/// Cone data at the hyperplane at infinity for one tempting subset.
#[derive(Clone, Debug)]
pub struct ConeAtInfinity {
    pub subset: Vec<usize>,
    pub generators: Vec<Vec<Rat>>,
    pub facets: Vec<Vec<Int>>,
}

/// A closed arc of directions, counterclockwise from `start` to `end`
/// (primitive integer boundary rays of the facet arrangement).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionArc {
    pub start: Vec<Int>,
    pub end: Vec<Int>,
}

#[derive(Clone, Debug)]
pub enum AsymptoticDetail {
    /// Picard rank 1: the direction space is a single point.
    RankOne { directions: Vec<Direction> },
    /// Picard rank 2: explicit closed arcs and isolated directions.
    RankTwo {
        arcs: Vec<DirectionArc>,
        isolated: Vec<Direction>,
    },
    /// Higher rank: membership through [`asymptotically_immaculate`] only.
    Higher,
}

/// Description of the asymptotic direction set of immaculate classes.
#[derive(Clone, Debug)]
pub struct AsymptoticDirections {
    pub rank: usize,
    pub cones: Vec<ConeAtInfinity>,
    pub detail: AsymptoticDetail,
}

impl AsymptoticDirections {
    /// `Some(true)` when the description certifies emptiness, `Some(false)`
    /// when it certifies nonemptiness, `None` for rank > 2 (oracle only).
    pub fn known_empty(&self) -> Option<bool> {
        match &self.detail {
            AsymptoticDetail::RankOne { directions } => Some(directions.is_empty()),
            AsymptoticDetail::RankTwo { arcs, isolated } => {
                Some(arcs.is_empty() && isolated.is_empty())
            }
            AsymptoticDetail::Higher => None,
        }
    }
}

/// Describes the asymptotic direction set: for rank 1 a point or nothing,
/// for rank 2 the classified circular arrangement of cone boundary rays,
/// for higher ranks the cone data plus the membership oracle.
pub fn asymptotic_directions(
    picdata: &PicardData,
    catalog: &TemptingCatalog,
) -> Result<AsymptoticDirections, Error> {
    let cones = forbidden_cones(picdata, catalog);
    let r = picdata.rank();
    let cone_data: Vec<ConeAtInfinity> = cones
        .iter()
        .filter(|fc| fc.cone.is_full_dim())
        .map(|fc| ConeAtInfinity {
            subset: fc.subset.clone(),
            generators: fc.cone.generators().to_vec(),
            facets: fc.cone.facets().to_vec(),
        })
        .collect();

    let detail = match r {
        1 => {
            let dir = Direction::new(vec![Int::one()]).expect("nonzero");
            let directions = if asymptotically_immaculate(&cones, &dir) {
                vec![dir]
            } else {
                vec![]
            };
            AsymptoticDetail::RankOne { directions }
        }
        2 => rank_two_detail(&cones, &cone_data)?,
        _ => AsymptoticDetail::Higher,
    };

    Ok(AsymptoticDirections {
        rank: r,
        cones: cone_data,
        detail,
    })
}

/// Counterclockwise order of nonzero plane vectors starting at (1, 0).
fn angular_less(a: &[Int], b: &[Int]) -> std::cmp::Ordering {
    let half = |v: &[Int]| -> u8 {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // within a half-turn, a before b iff cross(a, b) > 0
    let cross = &a[0] * &b[1] - &a[1] * &b[0];
    if cross.is_positive() {
        std::cmp::Ordering::Less
    } else if cross.is_negative() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

fn rank_two_detail(
    cones: &[ForbiddenCone],
    cone_data: &[ConeAtInfinity],
) -> Result<AsymptoticDetail, Error> {
    // Boundary rays of the arrangement: both directions of each facet line.
    let mut ray_set: BTreeSet<Vec<Int>> = BTreeSet::new();
    for cone in cone_data {
        for g in &cone.facets {
            let perp = vec![-g[1].clone(), g[0].clone()];
            let perp = primitive_integer_vector(&rat_vec(&perp));
            ray_set.insert(perp.iter().map(|x| -x.clone()).collect());
            ray_set.insert(perp);
        }
    }
    if ray_set.is_empty() {
        // No full-dimensional cone has a facet: everything is covered.
        return Ok(AsymptoticDetail::RankTwo {
            arcs: vec![],
            isolated: vec![],
        });
    }
    let mut rays: Vec<Vec<Int>> = ray_set.into_iter().collect();
    rays.sort_by(|a, b| angular_less(a, b));
    let k = rays.len();
    debug_assert!(k.is_multiple_of(2), "rays come in antipodal pairs");

    // Interleave rays and arc samples: item 2i = ray i, item 2i+1 = open arc
    // from ray i to ray i+1 (cyclically).
    let mut passes: Vec<bool> = Vec::with_capacity(2 * k);
    for i in 0..k {
        let ray_dir = Direction::new(rays[i].clone())?;
        passes.push(asymptotically_immaculate(cones, &ray_dir));
        let next = &rays[(i + 1) % k];
        let sample: Vec<Int> = if k == 2 {
            // two antipodal rays: the two arcs are half-circles
            let perp = vec![-rays[i][1].clone(), rays[i][0].clone()];
            if i == 0 {
                perp
            } else {
                perp.iter().map(|x| -x.clone()).collect()
            }
        } else {
            rays[i].iter().zip(next).map(|(x, y)| x + y).collect()
        };
        let arc_dir = Direction::new(sample)?;
        passes.push(asymptotically_immaculate(cones, &arc_dir));
    }

    if passes.iter().all(|&p| p) {
        return Err(Error::Inconsistency(
            "every direction asymptotically immaculate, yet the effective cone is full".into(),
        ));
    }

    // Maximal circular runs of passing items.
    let total = 2 * k;
    let mut runs: Vec<(usize, usize)> = Vec::new(); // [start, end] item indices
    let mut i = 0;
    while i < total {
        if !passes[i] || (i > 0 && passes[i - 1]) {
            i += 1;
            continue;
        }
        // i starts a run unless the run wraps around through total-1
        if i == 0 && passes[total - 1] {
            i += 1;
            continue;
        }
        let mut end = i;
        while passes[(end + 1) % total] {
            end = (end + 1) % total;
        }
        runs.push((i, end));
        i += 1;
    }
    // a run wrapping through index 0
    if passes[0] && passes[total - 1] {
        let mut start = total - 1;
        while passes[(start + total - 1) % total] && start > 0 {
            start -= 1;
        }
        let mut end = 0;
        while passes[(end + 1) % total] {
            end += 1;
        }
        runs.push((start, end));
    }
    runs.sort();
    runs.dedup();

    // Antipodal dedup: the antipode of item j is j + k (mod 2k).
    let mut kept: Vec<(usize, usize)> = Vec::new();
    for &(start, end) in &runs {
        let anti = ((start + k) % total, (end + k) % total);
        if !runs.contains(&anti) {
            return Err(Error::Inconsistency(
                "asymptotic set is not antipodally symmetric".into(),
            ));
        }
        if (start, end) <= anti {
            kept.push((start, end));
        }
    }

    let mut arcs = Vec::new();
    let mut isolated = Vec::new();
    for (start, end) in kept {
        if start == end {
            if start % 2 == 1 {
                return Err(Error::Inconsistency(
                    "open arc in the asymptotic set without its endpoints".into(),
                ));
            }
            isolated.push(Direction::new(rays[start / 2].clone())?);
        } else {
            if start % 2 == 1 || end % 2 == 1 {
                return Err(Error::Inconsistency(
                    "asymptotic arc not closed at arrangement rays".into(),
                ));
            }
            arcs.push(DirectionArc {
                start: rays[start / 2].clone(),
                end: rays[end / 2].clone(),
            });
        }
    }
    isolated.sort();
    isolated.dedup();
    Ok(AsymptoticDetail::RankTwo { arcs, isolated })
}

/// A class whose real image lies in the open interior of the Thomsen
/// zonotope, found by the floor construction: pick `m` with all pairings
/// `<m, v_i>` nonintegral, then take `sum floor(<m, v_i>) E_i`. Falls back
/// to enumerating interior classes directly.
pub fn interior_class(fan: &StackyFan, picdata: &PicardData) -> Result<DivisorClass, Error> {
    let z = zonotope(picdata);
    let d = fan.dim();
    for q in [2i64, 3, 5, 7, 11, 13] {
        let mut grid = vec![0i64; d];
        loop {
            // m = grid / q; all pairings must be nonintegral
            let mut ok = true;
            let mut floors = Vec::with_capacity(fan.ray_count());
            for ray in fan.rays() {
                let mut num = Int::zero();
                for (a, v) in grid.iter().zip(ray) {
                    num += Int::from(*a) * v;
                }
                if num.mod_floor(&Int::from(q)).is_zero() {
                    ok = false;
                    break;
                }
                floors.push(num.div_floor(&Int::from(q)));
            }
            if ok {
                let class = picdata.class_of(&floors)?;
                let real = picdata.real_image(&class);
                if z.contains(&real.coords, ZonotopeRegion::Interior) {
                    return Ok(class);
                }
            }
            // advance the symmetric grid odometer over {-(q-1), ..., q-1}^d
            let mut pos = 0;
            loop {
                if pos == d {
                    break;
                }
                grid[pos] += 1;
                if grid[pos] < q {
                    break;
                }
                grid[pos] = -(q - 1);
                pos += 1;
            }
            if pos == d {
                break;
            }
        }
    }
    // fallback: enumerate the interior classes of the zonotope
    zonotope_classes(picdata, &z, ZonotopeRegion::Interior)
        .into_iter()
        .next()
        .ok_or_else(|| {
            Error::Inconsistency("zonotope interior contains no class".into())
        })
}

/// An infinite immaculate family along a verified witness direction:
/// `z_0 + k·w` for `k = 1..count`, where `z_0` is an interior zonotope
/// class. Every returned class is re-checked and a failure is an internal
/// error, not a silent wrong answer.
pub fn witness_immaculate_family(
    fan: &StackyFan,
    picdata: &PicardData,
    catalog: &TemptingCatalog,
    witness: &Direction,
    count: usize,
) -> Result<Vec<DivisorClass>, Error> {
    let cones = forbidden_cones(picdata, catalog);
    if !asymptotically_immaculate(&cones, witness) {
        return Err(Error::NotAWitness(witness.to_string()));
    }
    let base = interior_class(fan, picdata)?;
    // The free part of the class lattice is all of Z^r, so the primitive
    // witness vector itself is the minimal step along the line.
    let step = witness.vector();
    let mut family = Vec::with_capacity(count);
    for k in 1..=count {
        let class = DivisorClass {
            free: base
                .free
                .iter()
                .zip(step)
                .map(|(z, w)| z + Int::from(k as i64) * w)
                .collect(),
            torsion: base.torsion.clone(),
        };
        if !is_immaculate(fan, picdata, catalog, &class)? {
            return Err(Error::Inconsistency(format!(
                "witness family member {k} along {witness} is not immaculate"
            )));
        }
        family.push(class);
    }
    Ok(family)
}

/// Result of the piecewise-linear hull check: the affine dimension of the
/// per-cone linearization points and, when degenerate with a nonzero class
/// direction, the direction certified to be asymptotically immaculate.
#[derive(Clone, Debug)]
pub struct HullReport {
    pub hull_dim: usize,
    pub degenerate: bool,
    pub direction: Option<Direction>,
}

/// For each maximal cone solve `<ψ_σ, v_i> = -c_i (i ∈ σ)` and measure the
/// affine dimension of the solution points. A degenerate hull certifies the
/// class direction as an asymptotic direction of immaculate classes; the
/// check is one-way.
pub fn hull_check(
    fan: &StackyFan,
    picdata: &PicardData,
    divisor: &[Int],
) -> Result<HullReport, Error> {
    let n = fan.ray_count();
    let d = fan.dim();
    if divisor.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: divisor.len(),
        });
    }
    let mut points: Vec<Vec<Rat>> = Vec::with_capacity(fan.max_cones().len());
    for cone in fan.max_cones() {
        let m = IntMatrix::from_rows(cone.iter().map(|&i| fan.ray(i).to_vec()).collect());
        let rhs: Vec<Int> = cone.iter().map(|&i| -divisor[i].clone()).collect();
        let psi = solve_rational(&m, &rhs).ok_or_else(|| {
            Error::Inconsistency("singular cone system in a validated fan".into())
        })?;
        points.push(psi);
    }
    let hull_dim = if points.len() <= 1 {
        0
    } else {
        let base = &points[0];
        let rows: Vec<Vec<Int>> = points[1..]
            .iter()
            .map(|p| {
                let diff: Vec<Rat> = p.iter().zip(base).map(|(x, y)| x - y).collect();
                primitive_integer_vector(&diff)
            })
            .collect();
        IntMatrix::from_rows(rows).rank()
    };
    let degenerate = hull_dim < d;
    let direction = if degenerate {
        let class = picdata.class_of(divisor)?;
        let real = picdata.real_image(&class);
        if real.coords.iter().all(Rat::is_zero) {
            None
        } else {
            Some(Direction::from_rationals(&real.coords)?)
        }
    } else {
        None
    };
    Ok(HullReport {
        hull_dim,
        degenerate,
        direction,
    })
}
