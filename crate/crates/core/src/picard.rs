//! Picard group of a stacky fan, presented as the cokernel of the pairing
//! matrix (row i is the ray vector v_i), in the deterministic basis fixed by
//! the Smith normal form. Divisor classes carry free coordinates and torsion
//! residues; real classes live in the free part tensored with Q.

use num_traits::Zero;

use crate::error::Error;
use crate::fan::StackyFan;
use crate::matrix::{cokernel, AbelianPresentation, IntMatrix};
use crate::{Int, Rat};

/// An element of the Picard group in the deterministic basis: a free part in
/// `Z^r` and torsion residues reduced into `[0, t_j)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    pub free: Vec<Int>,
    pub torsion: Vec<Int>,
}

impl DivisorClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Int::is_zero) && self.torsion.iter().all(Int::is_zero)
    }
}

/// Image of a class in the real Picard space `Q^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealClass {
    pub coords: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct PicardData {
    ray_count: usize,
    dim: usize,
    pairing: IntMatrix,
    presentation: AbelianPresentation,
    e_classes: Vec<DivisorClass>,
    e_real: Vec<Vec<Rat>>,
}

/// Picard presentation of a validated fan: `Pic = Z^n / im(M)` where the
/// relations are `sum_i <m, v_i> E_i = 0` over the dual basis.
pub fn picard_group(fan: &StackyFan) -> PicardData {
    let n = fan.ray_count();
    let d = fan.dim();
    let pairing = IntMatrix::from_rows(fan.rays().to_vec()); // n x d
    let presentation = cokernel(&pairing);
    let mut e_classes = Vec::with_capacity(n);
    let mut e_real = Vec::with_capacity(n);
    for i in 0..n {
        let mut unit = vec![Int::zero(); n];
        unit[i] = Int::from(1);
        let (free, torsion) = presentation.project(&unit);
        e_real.push(free.iter().cloned().map(Rat::from_integer).collect());
        e_classes.push(DivisorClass { free, torsion });
    }
    PicardData {
        ray_count: n,
        dim: d,
        pairing,
        presentation,
        e_classes,
        e_real,
    }
}

impl PicardData {
    pub fn ray_count(&self) -> usize {
        self.ray_count
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Free rank of the Picard group; equals n - d for complete fans.
    pub fn rank(&self) -> usize {
        self.presentation.free_rank()
    }

    pub fn torsion_invariants(&self) -> &[Int] {
        self.presentation.torsion_invariants()
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn presentation(&self) -> &AbelianPresentation {
        &self.presentation
    }

    /// Classes of the unit divisors E_i.
    pub fn ray_classes(&self) -> &[DivisorClass] {
        &self.e_classes
    }

    /// Real images of the E_i in `Q^r`.
    pub fn ray_reals(&self) -> &[Vec<Rat>] {
        &self.e_real
    }

    pub fn class_of(&self, divisor: &[Int]) -> Result<DivisorClass, Error> {
        if divisor.len() != self.ray_count {
            return Err(Error::DimensionMismatch {
                expected: self.ray_count,
                got: divisor.len(),
            });
        }
        let (free, torsion) = self.presentation.project(divisor);
        Ok(DivisorClass { free, torsion })
    }

    /// A divisor representative of the class (a section of `class_of`).
    pub fn divisor_rep(&self, class: &DivisorClass) -> Vec<Int> {
        self.presentation.lift(&class.free, &class.torsion)
    }

    pub fn zero_class(&self) -> DivisorClass {
        DivisorClass {
            free: vec![Int::zero(); self.rank()],
            torsion: vec![Int::zero(); self.torsion_invariants().len()],
        }
    }

    pub fn real_image(&self, class: &DivisorClass) -> RealClass {
        RealClass {
            coords: class.free.iter().cloned().map(Rat::from_integer).collect(),
        }
    }

    /// The canonical class `-sum_i E_i`.
    pub fn canonical_class(&self) -> DivisorClass {
        let minus_ones = vec![Int::from(-1); self.ray_count];
        self.class_of(&minus_ones).expect("length matches")
    }

    /// Serre duality involution `L -> K - L`.
    pub fn serre_dual(&self, class: &DivisorClass) -> DivisorClass {
        self.class_sub(&self.canonical_class(), class)
    }

    pub fn class_add(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        DivisorClass {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: self.presentation.reduce_torsion(
                &a.torsion
                    .iter()
                    .zip(&b.torsion)
                    .map(|(x, y)| x + y)
                    .collect::<Vec<_>>(),
            ),
        }
    }

    pub fn class_sub(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        DivisorClass {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x - y).collect(),
            torsion: self.presentation.reduce_torsion(
                &a.torsion
                    .iter()
                    .zip(&b.torsion)
                    .map(|(x, y)| x - y)
                    .collect::<Vec<_>>(),
            ),
        }
    }

    pub fn class_scale(&self, k: &Int, a: &DivisorClass) -> DivisorClass {
        DivisorClass {
            free: a.free.iter().map(|x| k * x).collect(),
            torsion: self.presentation.reduce_torsion(
                &a.torsion.iter().map(|x| k * x).collect::<Vec<_>>(),
            ),
        }
    }
}
