//! Reduced simplicial homology ranks over the rationals, and the catalog of
//! tempting ray subsets (those whose restricted complex has nonvanishing
//! reduced homology in some degree, including degree -1 for `{∅}`).

use std::collections::BTreeMap;


use crate::error::Error;
use crate::fan::{restricted_complex, SimplicialComplex, StackyFan};
use crate::matrix::IntMatrix;
use crate::Int;

/// Default cap on the number of subsets enumerated by [`tempting_sets`].
pub const DEFAULT_SUBSET_LIMIT: u64 = 1 << 24;

/// Ranks of reduced homology by degree, starting at degree -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRanks {
    by_degree: Vec<usize>,
}

impl HomologyRanks {
    pub fn rank(&self, degree: i64) -> usize {
        if degree < -1 {
            return 0;
        }
        self.by_degree
            .get((degree + 1) as usize)
            .copied()
            .unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.by_degree.iter().all(|&r| r == 0)
    }

    /// `(degree, rank)` pairs with nonzero rank.
    pub fn nonzero(&self) -> Vec<(i64, usize)> {
        self.by_degree
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(i, &r)| (i as i64 - 1, r))
            .collect()
    }
}

/// Ranks of the reduced rational homology of a subset-closed complex,
/// computed by exact integer rank of the boundary matrices.
pub fn reduced_homology_ranks(cx: &SimplicialComplex) -> HomologyRanks {
    let top = cx.dim();
    // faces grouped by dimension, in the complex's deterministic order
    let mut faces: Vec<Vec<&Vec<usize>>> = Vec::new();
    for k in -1..=top {
        faces.push(cx.faces_of_dim(k));
    }
    let count = |k: i64| -> usize {
        if k < -1 || k > top {
            0
        } else {
            faces[(k + 1) as usize].len()
        }
    };

    // boundary_rank[k] = rank of d_k : C_k -> C_{k-1}; degree k from 0..=top,
    // d_0 is the augmentation onto the empty face.
    let mut boundary_rank: BTreeMap<i64, usize> = BTreeMap::new();
    for k in 0..=top {
        let rows_faces = &faces[k as usize]; // (k-1)-faces
        let cols_faces = &faces[(k + 1) as usize]; // k-faces
        let row_index: BTreeMap<&Vec<usize>, usize> = rows_faces
            .iter()
            .enumerate()
            .map(|(i, f)| (*f, i))
            .collect();
        let mut m = IntMatrix::zero(rows_faces.len(), cols_faces.len());
        for (j, face) in cols_faces.iter().enumerate() {
            for drop in 0..face.len() {
                let mut sub = (*face).clone();
                sub.remove(drop);
                let i = row_index[&sub];
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                m.set(i, j, Int::from(sign));
            }
        }
        boundary_rank.insert(k, m.rank());
    }

    let mut by_degree = Vec::with_capacity((top + 2) as usize);
    for k in -1..=top {
        let rank_in = boundary_rank.get(&(k + 1)).copied().unwrap_or(0);
        let rank_out = boundary_rank.get(&k).copied().unwrap_or(0);
        by_degree.push(count(k) - rank_in - rank_out);
    }
    HomologyRanks { by_degree }
}

/// Whether the restricted complex has any nonzero reduced homology.
pub fn is_tempting(fan: &StackyFan, subset: &[usize]) -> Result<bool, Error> {
    let cx = restricted_complex(fan, subset)?;
    Ok(!reduced_homology_ranks(&cx).is_trivial())
}

/// All tempting subsets of a fan with the reduced homology ranks of their
/// restricted complexes. Entries sorted by size, then lexicographically.
#[derive(Clone, Debug)]
pub struct TemptingCatalog {
    entries: Vec<(Vec<usize>, HomologyRanks)>,
}

impl TemptingCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Vec<usize>, HomologyRanks)> {
        self.entries.iter()
    }

    pub fn subsets(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.entries.iter().map(|(s, _)| s)
    }

    pub fn contains(&self, subset: &[usize]) -> bool {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        self.entries.iter().any(|(s, _)| *s == sorted)
    }

    pub fn ranks_of(&self, subset: &[usize]) -> Option<&HomologyRanks> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        self.entries
            .iter()
            .find(|(s, _)| *s == sorted)
            .map(|(_, r)| r)
    }
}

/// Tempting-subset enumeration with the default subset cap.
pub fn tempting_sets(fan: &StackyFan) -> Result<TemptingCatalog, Error> {
    tempting_sets_with_limit(fan, DEFAULT_SUBSET_LIMIT)
}

/// Enumerates the 2^n subsets with the complement-symmetry shortcut: only
/// subsets containing ray 0 are tested directly; the complement of each
/// tempting one is recomputed and audited (it must come out tempting too).
pub fn tempting_sets_with_limit(
    fan: &StackyFan,
    limit: u64,
) -> Result<TemptingCatalog, Error> {
    let n = fan.ray_count();
    if n >= 64 || 1u64.checked_shl(n as u32).is_none_or(|c| c > limit) {
        return Err(Error::SubsetLimitExceeded {
            ray_count: n,
            limit,
        });
    }
    let mut entries: Vec<(Vec<usize>, HomologyRanks)> = Vec::new();
    let half = 1u64 << (n.saturating_sub(1));
    for mask in 0..half {
        // subset J containing ray 0
        let mut subset = vec![0usize];
        for bit in 0..n.saturating_sub(1) {
            if mask & (1 << bit) != 0 {
                subset.push(bit + 1);
            }
        }
        let ranks = reduced_homology_ranks(&restricted_complex(fan, &subset)?);
        if ranks.is_trivial() {
            continue;
        }
        let complement: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
        let co_ranks = reduced_homology_ranks(&restricted_complex(fan, &complement)?);
        // Complement symmetry audit: tempting sets come in complementary
        // pairs. A trivial complement here means the computation is wrong.
        if co_ranks.is_trivial() {
            return Err(Error::Inconsistency(format!(
                "subset {subset:?} is tempting but its complement is not"
            )));
        }
        entries.push((subset, ranks));
        entries.push((complement, co_ranks));
    }
    entries.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    entries.dedup_by(|a, b| a.0 == b.0);
    Ok(TemptingCatalog { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::builtins;
    use crate::fan::full_complex;

    fn euler_consistent(cx: &SimplicialComplex, ranks: &HomologyRanks) -> bool {
        // alternating face-count sum equals alternating homology-rank sum,
        // both starting at the empty face in degree -1
        let top = cx.dim();
        let mut faces = 0i64;
        let mut hom = 0i64;
        for k in -1..=top {
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            faces += sign * cx.faces_of_dim(k).len() as i64;
            hom += sign * ranks.rank(k) as i64;
        }
        faces == hom
    }

    #[test]
    fn empty_complex_has_rank_in_degree_minus_one() {
        let cx = SimplicialComplex::empty_complex();
        let ranks = reduced_homology_ranks(&cx);
        assert_eq!(ranks.rank(-1), 1);
        assert!(ranks.nonzero() == vec![(-1, 1)]);
        assert!(euler_consistent(&cx, &ranks));
    }

    #[test]
    fn single_vertex_is_acyclic() {
        let cx = SimplicialComplex::from_maximal_faces([0].into(), &[vec![0]]);
        let ranks = reduced_homology_ranks(&cx);
        assert!(ranks.is_trivial());
        assert!(euler_consistent(&cx, &ranks));
    }

    #[test]
    fn hollow_triangle_is_a_circle() {
        let cx = SimplicialComplex::from_maximal_faces(
            [0, 1, 2].into(),
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
        );
        let ranks = reduced_homology_ranks(&cx);
        assert_eq!(ranks.nonzero(), vec![(1, 1)]);
        assert!(euler_consistent(&cx, &ranks));
    }

    #[test]
    fn filled_triangle_is_acyclic() {
        let cx =
            SimplicialComplex::from_maximal_faces([0, 1, 2].into(), &[vec![0, 1, 2]]);
        let ranks = reduced_homology_ranks(&cx);
        assert!(ranks.is_trivial());
        assert!(euler_consistent(&cx, &ranks));
    }

    #[test]
    fn fan_complexes_are_spheres() {
        // the full complex of a complete simplicial fan is a (d-1)-sphere
        for (fan, d) in [
            (builtins::projective_space(1).unwrap(), 1),
            (builtins::projective_space(2).unwrap(), 2),
            (builtins::projective_space(3).unwrap(), 3),
            (builtins::hirzebruch(1).unwrap(), 2),
        ] {
            let ranks = reduced_homology_ranks(&full_complex(&fan));
            assert_eq!(ranks.rank(d - 1), 1, "{:?}", fan.name());
            assert_eq!(ranks.nonzero().len(), 1, "{:?}", fan.name());
        }
    }

    #[test]
    fn tempting_examples() {
        let p1 = builtins::projective_space(1).unwrap();
        assert!(is_tempting(&p1, &[]).unwrap());
        assert!(!is_tempting(&p1, &[0]).unwrap());
        assert!(is_tempting(&p1, &[0, 1]).unwrap());

        let p1xp1 = builtins::product(&p1, &p1);
        assert!(is_tempting(&p1xp1, &[0, 1]).unwrap());

        let p2 = builtins::projective_space(2).unwrap();
        assert!(!is_tempting(&p2, &[0, 1]).unwrap());
    }

    #[test]
    fn tempting_catalog_p1() {
        let fan = builtins::projective_space(1).unwrap();
        let catalog = tempting_sets(&fan).unwrap();
        let subsets: Vec<&Vec<usize>> = catalog.subsets().collect();
        assert_eq!(subsets, vec![&vec![], &vec![0, 1]]);
    }

    #[test]
    fn tempting_catalog_p1xp1() {
        let p1 = builtins::projective_space(1).unwrap();
        let fan = builtins::product(&p1, &p1);
        let catalog = tempting_sets(&fan).unwrap();
        let subsets: Vec<&Vec<usize>> = catalog.subsets().collect();
        assert_eq!(
            subsets,
            vec![&vec![], &vec![0, 1], &vec![2, 3], &vec![0, 1, 2, 3]]
        );
    }

    #[test]
    fn tempting_catalog_hirzebruch() {
        let fan = builtins::hirzebruch(1).unwrap();
        let catalog = tempting_sets(&fan).unwrap();
        let subsets: Vec<&Vec<usize>> = catalog.subsets().collect();
        assert_eq!(
            subsets,
            vec![&vec![], &vec![0, 2], &vec![1, 3], &vec![0, 1, 2, 3]]
        );
    }

    #[test]
    fn catalog_matches_exhaustive_enumeration() {
        for fan in [
            builtins::projective_space(2).unwrap(),
            builtins::hirzebruch(2).unwrap(),
            builtins::product(
                &builtins::stacky_p1(2, 3).unwrap(),
                &builtins::projective_space(1).unwrap(),
            ),
        ] {
            let catalog = tempting_sets(&fan).unwrap();
            let n = fan.ray_count();
            for mask in 0u64..(1 << n) {
                let subset: Vec<usize> =
                    (0..n).filter(|i| mask & (1 << i) != 0).collect();
                assert_eq!(
                    catalog.contains(&subset),
                    is_tempting(&fan, &subset).unwrap(),
                    "subset {subset:?} of {:?}",
                    fan.name()
                );
            }
        }
    }

    #[test]
    fn catalog_is_complement_closed() {
        let fan = builtins::product(
            &builtins::projective_space(1).unwrap(),
            &builtins::projective_space(2).unwrap(),
        );
        let n = fan.ray_count();
        let catalog = tempting_sets(&fan).unwrap();
        assert!(catalog.contains(&[]));
        assert!(catalog.contains(&(0..n).collect::<Vec<_>>()));
        for (subset, _) in catalog.iter() {
            let complement: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
            assert!(catalog.contains(&complement));
        }
    }

    #[test]
    fn subset_limit_is_enforced() {
        let fan = builtins::product(
            &builtins::projective_space(1).unwrap(),
            &builtins::projective_space(1).unwrap(),
        );
        assert!(matches!(
            tempting_sets_with_limit(&fan, 8),
            Err(Error::SubsetLimitExceeded { .. })
        ));
    }
}
