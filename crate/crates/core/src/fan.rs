//! Stacky fans: the combinatorial input data. A fan is a lattice rank, a
//! list of nonzero integer ray vectors (not necessarily primitive: the
//! multiplicities carry the stacky structure), and the maximal simplicial
//! cones as 0-based index sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer as NumInteger;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::matrix::{kernel_basis, IntMatrix};
use crate::{Int, Rat};

#[derive(Clone, Debug)]
pub struct StackyFan {
    dim: usize,
    rays: Vec<Vec<Int>>,
    max_cones: Vec<Vec<usize>>,
    name: Option<String>,
}

impl StackyFan {
    /// Builds a fan from raw data. Only structural shape is enforced here;
    /// geometric requirements (simpliciality, completeness) are reported by
    /// [`validate`].
    pub fn new(
        dim: usize,
        rays: Vec<Vec<Int>>,
        max_cones: Vec<Vec<usize>>,
        name: Option<String>,
    ) -> Result<Self, Error> {
        for (i, ray) in rays.iter().enumerate() {
            if ray.len() != dim {
                return Err(Error::InvalidFan(format!(
                    "ray {i} has {} coordinates, expected {dim}",
                    ray.len()
                )));
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (ci, cone) in max_cones.into_iter().enumerate() {
            let mut sorted = cone;
            sorted.sort_unstable();
            for &idx in &sorted {
                if idx >= rays.len() {
                    return Err(Error::RayIndexOutOfRange {
                        index: idx,
                        count: rays.len(),
                    });
                }
            }
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFan(format!(
                    "maximal cone {ci} repeats a ray index"
                )));
            }
            cones.push(sorted);
        }
        Ok(StackyFan {
            dim,
            rays,
            max_cones: cones,
            name,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[Int] {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
}

/// A violation found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroRay {
        ray: usize,
    },
    /// Two rays are positive rational multiples of each other.
    ParallelRays {
        first: usize,
        second: usize,
    },
    WrongConeSize {
        cone: usize,
        size: usize,
    },
    /// A maximal cone whose rays are linearly dependent.
    DegenerateCone {
        cone: usize,
    },
    /// A (d-1)-face contained in a number of maximal cones other than two.
    WallCount {
        wall: Vec<usize>,
        count: usize,
    },
    /// The two cones at a wall do not sit on opposite sides of it.
    WallNotSeparating {
        wall: Vec<usize>,
        cones: (usize, usize),
    },
    /// Wall-adjacency graph of maximal cones is not connected.
    Disconnected {
        reached: usize,
        total: usize,
    },
    RayUnused {
        ray: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRay { ray } => write!(f, "ray {ray} is the zero vector"),
            Violation::ParallelRays { first, second } => write!(
                f,
                "rays {first} and {second} are positive multiples of each other"
            ),
            Violation::WrongConeSize { cone, size } => {
                write!(f, "maximal cone {cone} has {size} rays, expected the fan dimension")
            }
            Violation::DegenerateCone { cone } => {
                write!(f, "maximal cone {cone} has linearly dependent rays")
            }
            Violation::WallCount { wall, count } => write!(
                f,
                "wall {wall:?} lies in {count} maximal cones, expected exactly 2"
            ),
            Violation::WallNotSeparating { wall, cones } => write!(
                f,
                "maximal cones {} and {} do not lie on opposite sides of wall {wall:?}",
                cones.0, cones.1
            ),
            Violation::Disconnected { reached, total } => write!(
                f,
                "wall-adjacency graph is disconnected ({reached} of {total} cones reachable)"
            ),
            Violation::RayUnused { ray } => {
                write!(f, "ray {ray} does not appear in any maximal cone")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the fan is a complete simplicial fan: nonzero pairwise
/// non-parallel rays, simplicial maximal cones of full size, the wall
/// condition (every (d-1)-face in exactly two maximal cones), connectivity
/// of the wall-adjacency graph, and the opposite-sides condition at each
/// wall. Together these certify completeness for the fans in scope.
pub fn validate(fan: &StackyFan) -> ValidationReport {
    let mut violations = Vec::new();
    let d = fan.dim();
    let n = fan.ray_count();

    for (i, ray) in fan.rays().iter().enumerate() {
        if ray.iter().all(Int::is_zero) {
            violations.push(Violation::ZeroRay { ray: i });
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            if positive_multiple(fan.ray(i), fan.ray(j)) {
                violations.push(Violation::ParallelRays { first: i, second: j });
            }
        }
    }

    let mut used = vec![false; n];
    for (ci, cone) in fan.max_cones().iter().enumerate() {
        for &r in cone {
            used[r] = true;
        }
        if cone.len() != d {
            violations.push(Violation::WrongConeSize {
                cone: ci,
                size: cone.len(),
            });
            continue;
        }
        let m = IntMatrix::from_rows(cone.iter().map(|&r| fan.ray(r).to_vec()).collect());
        if m.determinant().is_zero() {
            violations.push(Violation::DegenerateCone { cone: ci });
        }
    }
    for (i, flag) in used.iter().enumerate() {
        if !flag {
            violations.push(Violation::RayUnused { ray: i });
        }
    }

    // Wall condition: walls are the (d-1)-subsets of maximal cones.
    let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, cone) in fan.max_cones().iter().enumerate() {
        if cone.len() != d {
            continue;
        }
        for skip in 0..cone.len() {
            let mut wall = cone.clone();
            wall.remove(skip);
            walls.entry(wall).or_default().push(ci);
        }
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); fan.max_cones().len()];
    for (wall, cones) in &walls {
        if cones.len() != 2 {
            violations.push(Violation::WallCount {
                wall: wall.clone(),
                count: cones.len(),
            });
            continue;
        }
        let (a, b) = (cones[0], cones[1]);
        adjacency[a].push(b);
        adjacency[b].push(a);
        if let Some(v) = check_wall_separation(fan, wall, a, b) {
            violations.push(v);
        }
    }

    // Connectivity of the adjacency graph.
    if fan.max_cones().is_empty() {
        violations.push(Violation::Disconnected {
            reached: 0,
            total: 0,
        });
    } else {
        let total = fan.max_cones().len();
        let mut seen = vec![false; total];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(c) = stack.pop() {
            for &next in &adjacency[c] {
                if !seen[next] {
                    seen[next] = true;
                    reached += 1;
                    stack.push(next);
                }
            }
        }
        if reached != total {
            violations.push(Violation::Disconnected { reached, total });
        }
    }

    ValidationReport { violations }
}

/// The two maximal cones at a wall must have their remaining rays on
/// strictly opposite sides of the wall hyperplane.
fn check_wall_separation(
    fan: &StackyFan,
    wall: &[usize],
    cone_a: usize,
    cone_b: usize,
) -> Option<Violation> {
    let rows: Vec<Vec<Rat>> = wall
        .iter()
        .map(|&r| {
            fan.ray(r)
                .iter()
                .cloned()
                .map(Rat::from_integer)
                .collect()
        })
        .collect();
    let kernel = kernel_basis(&rows, fan.dim());
    if kernel.len() != 1 {
        // wall rays dependent; the degenerate-cone check already fired
        return None;
    }
    let normal = &kernel[0];
    let value = |cone: usize| -> Option<Rat> {
        let extra = fan.max_cones()[cone]
            .iter()
            .find(|r| !wall.contains(r))?;
        let ray: Vec<Rat> = fan
            .ray(*extra)
            .iter()
            .cloned()
            .map(Rat::from_integer)
            .collect();
        Some(crate::dot(normal, &ray))
    };
    let (va, vb) = (value(cone_a)?, value(cone_b)?);
    if va.is_zero() || vb.is_zero() || va.is_positive() == vb.is_positive() {
        return Some(Violation::WallNotSeparating {
            wall: wall.to_vec(),
            cones: (cone_a, cone_b),
        });
    }
    None
}

/// `true` when `b = t * a` for some rational `t > 0`.
fn positive_multiple(a: &[Int], b: &[Int]) -> bool {
    if a.iter().all(Int::is_zero) || b.iter().all(Int::is_zero) {
        return false;
    }
    let mut ratio: Option<(Int, Int)> = None; // b_i / a_i as (num, den)
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return false,
            (false, false) => match &ratio {
                None => {
                    if x.is_positive() != y.is_positive() {
                        return false;
                    }
                    ratio = Some((y.clone(), x.clone()));
                }
                Some((num, den)) => {
                    if y * den != x * num {
                        return false;
                    }
                }
            },
        }
    }
    true
}

/// Abstract simplicial complex on a vertex subset of the ray indices.
/// Always contains the empty face; faces are stored as sorted index vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: BTreeSet<usize>,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn empty_complex() -> Self {
        let mut faces = BTreeSet::new();
        faces.insert(Vec::new());
        SimplicialComplex {
            vertices: BTreeSet::new(),
            faces,
        }
    }

    /// Builds the subset-closure of the given faces.
    pub fn from_maximal_faces(vertices: BTreeSet<usize>, maximal: &[Vec<usize>]) -> Self {
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        faces.insert(Vec::new());
        for face in maximal {
            let mut sorted = face.clone();
            sorted.sort_unstable();
            for mask in 0u64..(1 << sorted.len()) {
                let sub: Vec<usize> = sorted
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                faces.insert(sub);
            }
        }
        SimplicialComplex { vertices, faces }
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn faces(&self) -> &BTreeSet<Vec<usize>> {
        &self.faces
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        let mut sorted = face.to_vec();
        sorted.sort_unstable();
        self.faces.contains(&sorted)
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Dimension of the complex: -1 for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| f.len() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }

    /// Faces with exactly `k+1` vertices, sorted.
    pub fn faces_of_dim(&self, k: i64) -> Vec<&Vec<usize>> {
        self.faces
            .iter()
            .filter(|f| f.len() as i64 == k + 1)
            .collect()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.faces.len() == 1
    }
}

/// The simplicial complex of the fan: all subsets of maximal cone index sets.
pub fn full_complex(fan: &StackyFan) -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(
        (0..fan.ray_count()).collect(),
        fan.max_cones(),
    )
}

/// The restriction to `I`: faces of the fan complex contained in `I`.
/// The restriction to the empty set is the complex `{∅}`.
pub fn restricted_complex(fan: &StackyFan, subset: &[usize]) -> Result<SimplicialComplex, Error> {
    let n = fan.ray_count();
    for &i in subset {
        if i >= n {
            return Err(Error::RayIndexOutOfRange { index: i, count: n });
        }
    }
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    let maximal: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .map(|cone| {
            cone.iter()
                .copied()
                .filter(|r| set.contains(r))
                .collect::<Vec<usize>>()
        })
        .collect();
    Ok(SimplicialComplex::from_maximal_faces(set, &maximal))
}

// ---------------------------------------------------------------------------
// Builtin fan catalog
// ---------------------------------------------------------------------------

pub mod builtins {
    use super::*;

    /// Fan of d-dimensional projective space: rays e_1..e_d and -(e_1+..+e_d),
    /// maximal cones all d-subsets of the d+1 rays.
    pub fn projective_space(d: usize) -> Result<StackyFan, Error> {
        if d == 0 {
            return Err(Error::InvalidParameters(
                "projective_space needs dimension >= 1".into(),
            ));
        }
        let mut rays = Vec::with_capacity(d + 1);
        for i in 0..d {
            let mut e = vec![Int::zero(); d];
            e[i] = Int::from(1);
            rays.push(e);
        }
        rays.push(vec![Int::from(-1); d]);
        let cones = (0..=d)
            .rev()
            .map(|skip| (0..=d).filter(|&i| i != skip).collect())
            .collect();
        StackyFan::new(d, rays, cones, Some(format!("projective_space({d})")))
    }

    /// Hirzebruch surface fan: rays (1,0), (0,1), (-1,a), (0,-1) with the
    /// four cones of adjacent rays.
    pub fn hirzebruch(a: i64) -> Result<StackyFan, Error> {
        if a < 0 {
            return Err(Error::InvalidParameters(
                "hirzebruch parameter must be >= 0".into(),
            ));
        }
        let rays = vec![
            vec![Int::from(1), Int::from(0)],
            vec![Int::from(0), Int::from(1)],
            vec![Int::from(-1), Int::from(a)],
            vec![Int::from(0), Int::from(-1)],
        ];
        let cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]];
        StackyFan::new(2, rays, cones, Some(format!("hirzebruch({a})")))
    }

    /// Weighted projective line P(a:b) as a stacky fan on N = Z with rays
    /// v_0 = b and v_1 = -a, so the two divisor classes have degrees a and b.
    pub fn stacky_p1(a: i64, b: i64) -> Result<StackyFan, Error> {
        if a <= 0 || b <= 0 {
            return Err(Error::InvalidParameters(
                "stacky_p1 weights must be positive".into(),
            ));
        }
        if Int::from(a).gcd(&Int::from(b)) != Int::from(1) {
            return Err(Error::InvalidParameters(
                "stacky_p1 weights must be coprime".into(),
            ));
        }
        let rays = vec![vec![Int::from(b)], vec![Int::from(-a)]];
        let cones = vec![vec![0], vec![1]];
        StackyFan::new(1, rays, cones, Some(format!("stacky_p1({a},{b})")))
    }

    /// Product fan: block-embedded rays, cones are unions of one maximal
    /// cone from each factor.
    pub fn product(f: &StackyFan, g: &StackyFan) -> StackyFan {
        let d = f.dim() + g.dim();
        let nf = f.ray_count();
        let mut rays = Vec::with_capacity(nf + g.ray_count());
        for ray in f.rays() {
            let mut v = ray.clone();
            v.extend(vec![Int::zero(); g.dim()]);
            rays.push(v);
        }
        for ray in g.rays() {
            let mut v = vec![Int::zero(); f.dim()];
            v.extend(ray.clone());
            rays.push(v);
        }
        let mut cones = Vec::new();
        for cf in f.max_cones() {
            for cg in g.max_cones() {
                let mut cone = cf.clone();
                cone.extend(cg.iter().map(|&i| i + nf));
                cones.push(cone);
            }
        }
        let name = format!(
            "product({},{})",
            f.name().unwrap_or("?"),
            g.name().unwrap_or("?")
        );
        StackyFan::new(d, rays, cones, Some(name)).expect("product of well-formed fans")
    }
}
