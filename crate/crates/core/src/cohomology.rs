//! Cohomology dimensions of line bundles, exactly.
//!
//! For a tempting subset `I` and a divisor representative `c` of a class, the
//! monoid preimages counted by the cohomology formula biject with the lattice
//! points `m` of the pattern polytope `{<m, v_i> >= -c_i (i ∉ I),
//! <m, v_i> <= -c_i - 1 (i ∈ I)}`: the kernel of the class projection is
//! spanned by the pairing rows, so shifting by `m` enumerates all nonnegative
//! solutions exactly once. Each `h^i` is then a weighted sum of these counts
//! against the reduced homology ranks of the restricted complexes.


use crate::error::Error;
use crate::fan::StackyFan;
use crate::homology::TemptingCatalog;
use crate::lp::LinearSystem;
use crate::picard::{DivisorClass, PicardData};
use crate::polyhedra::{all_torsion_tuples, bounded_lattice_points};
use crate::{Int, Rat};

/// The rational polytope in the dual space whose lattice points are counted
/// by [`pattern_count`].
#[derive(Clone, Debug)]
pub struct PatternPolytope {
    pub subset: Vec<usize>,
    pub system: LinearSystem,
}

/// Builds the pattern polytope of a divisor representative and a subset.
pub fn pattern_polytope(fan: &StackyFan, representative: &[Int], subset: &[usize]) -> PatternPolytope {
    let d = fan.dim();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let mut system = LinearSystem::new(d);
    for (i, ray) in fan.rays().iter().enumerate() {
        let in_subset = sorted.binary_search(&i).is_ok();
        if in_subset {
            // <m, v_i> <= -c_i - 1
            let coeffs: Vec<Rat> = ray
                .iter()
                .map(|x| Rat::from_integer(-x.clone()))
                .collect();
            system.ge(coeffs, Rat::from_integer(&representative[i] + Int::from(1)));
        } else {
            // <m, v_i> >= -c_i
            let coeffs: Vec<Rat> = ray.iter().cloned().map(Rat::from_integer).collect();
            system.ge(coeffs, Rat::from_integer(-representative[i].clone()));
        }
    }
    PatternPolytope {
        subset: sorted,
        system,
    }
}

/// Number of monoid preimages of `class` for the subset `I`, computed as the
/// lattice-point count of the pattern polytope. An unbounded polytope is a
/// structural error: it signals a non-complete fan or a non-tempting subset.
pub fn pattern_count(
    fan: &StackyFan,
    picdata: &PicardData,
    class: &DivisorClass,
    subset: &[usize],
) -> Result<u64, Error> {
    let representative = picdata.divisor_rep(class);
    let polytope = pattern_polytope(fan, &representative, subset);
    match bounded_lattice_points(&polytope.system)? {
        Some(points) => Ok(points.len() as u64),
        None => Err(Error::UnboundedPattern {
            subset: polytope.subset,
        }),
    }
}

/// The vector `(h^0, ..., h^d)` of cohomology dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyVector {
    pub h: Vec<u64>,
}

impl CohomologyVector {
    pub fn is_zero(&self) -> bool {
        self.h.iter().all(|&x| x == 0)
    }
}

/// Alternating sum of the cohomology dimensions.
pub fn euler_characteristic(v: &CohomologyVector) -> i128 {
    v.h.iter()
        .enumerate()
        .map(|(i, &x)| {
            let x = x as i128;
            if i % 2 == 0 {
                x
            } else {
                -x
            }
        })
        .sum()
}

fn cohomology_profile(
    fan: &StackyFan,
    picdata: &PicardData,
    catalog: &TemptingCatalog,
    class: &DivisorClass,
) -> Result<(CohomologyVector, bool), Error> {
    let d = fan.dim();
    let mut h = vec![0u64; d + 1];
    let mut all_counts_zero = true;
    for (subset, ranks) in catalog.iter() {
        let count = pattern_count(fan, picdata, class, subset)?;
        if count == 0 {
            continue;
        }
        all_counts_zero = false;
        for (i, slot) in h.iter_mut().enumerate() {
            *slot += ranks.rank(i as i64 - 1) as u64 * count;
        }
    }
    Ok((CohomologyVector { h }, all_counts_zero))
}

/// `h^i = sum over tempting I of rank H~_{i-1}(Σ|_I) * p_I`. Non-tempting
/// subsets contribute no homology and are never counted.
pub fn cohomology_vector(
    fan: &StackyFan,
    picdata: &PicardData,
    catalog: &TemptingCatalog,
    class: &DivisorClass,
) -> Result<CohomologyVector, Error> {
    Ok(cohomology_profile(fan, picdata, catalog, class)?.0)
}

/// A class is immaculate iff every tempting count vanishes, equivalently iff
/// the whole cohomology vector vanishes; both routes are computed and must
/// agree.
pub fn is_immaculate(
    fan: &StackyFan,
    picdata: &PicardData,
    catalog: &TemptingCatalog,
    class: &DivisorClass,
) -> Result<bool, Error> {
    let (vector, all_counts_zero) = cohomology_profile(fan, picdata, catalog, class)?;
    if vector.is_zero() != all_counts_zero {
        return Err(Error::Inconsistency(
            "count-based and rank-based immaculacy tests disagree".into(),
        ));
    }
    Ok(all_counts_zero)
}

/// All immaculate classes whose free coordinates lie in the closed box, in
/// lexicographic order of free coordinates, then torsion residues.
pub fn immaculate_scan(
    fan: &StackyFan,
    picdata: &PicardData,
    catalog: &TemptingCatalog,
    bounds: &[(Int, Int)],
) -> Result<Vec<DivisorClass>, Error> {
    if bounds.len() != picdata.rank() {
        return Err(Error::DimensionMismatch {
            expected: picdata.rank(),
            got: bounds.len(),
        });
    }
    let torsion_tuples = all_torsion_tuples(picdata.torsion_invariants());
    let mut out = Vec::new();
    let mut free = Vec::with_capacity(bounds.len());
    scan_rec(
        fan,
        picdata,
        catalog,
        bounds,
        &torsion_tuples,
        &mut free,
        &mut out,
    )?;
    Ok(out)
}

fn scan_rec(
    fan: &StackyFan,
    picdata: &PicardData,
    catalog: &TemptingCatalog,
    bounds: &[(Int, Int)],
    torsion_tuples: &[Vec<Int>],
    free: &mut Vec<Int>,
    out: &mut Vec<DivisorClass>,
) -> Result<(), Error> {
    if free.len() == bounds.len() {
        for tuple in torsion_tuples {
            let class = DivisorClass {
                free: free.clone(),
                torsion: tuple.clone(),
            };
            if is_immaculate(fan, picdata, catalog, &class)? {
                out.push(class);
            }
        }
        return Ok(());
    }
    let (lo, hi) = &bounds[free.len()];
    let mut t = lo.clone();
    while &t <= hi {
        free.push(t.clone());
        scan_rec(fan, picdata, catalog, bounds, torsion_tuples, free, out)?;
        free.pop();
        t += Int::from(1);
    }
    Ok(())
}
