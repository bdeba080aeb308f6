//! Exact integer linear algebra: dense matrices, Smith normal form with
//! unimodular transforms, cokernel presentations of abelian groups, and
//! fraction-free rank/determinant routines.

use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Dense row-major matrix over arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| crate::int_dot(self.row(i), v))
            .collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.at(i, c).clone();
            self.set(i, c, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, j).clone();
            self.set(r, j, v);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        for k in 0..self.cols {
            let v = self.at(dst, k) + c * self.at(src, k);
            self.set(dst, k, v);
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        for k in 0..self.rows {
            let v = self.at(k, dst) + c * self.at(k, src);
            self.set(k, dst, v);
        }
    }

    /// Rank over the rationals, computed by fraction-free (Bareiss)
    /// elimination with full pivoting.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let bound = self.rows.min(self.cols);
        let mut prev = Int::one();
        let mut rank = 0;
        for k in 0..bound {
            let mut pivot = None;
            'search: for i in k..m.rows {
                for j in k..m.cols {
                    if !m.at(i, j).is_zero() {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap_rows(k, pi);
            m.swap_cols(k, pj);
            for i in k + 1..m.rows {
                for j in k + 1..m.cols {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    m.set(i, j, &num / &prev);
                }
            }
            for i in k + 1..m.rows {
                m.set(i, k, Int::zero());
            }
            prev = m.at(k, k).clone();
            rank += 1;
        }
        rank
    }

    /// Exact determinant (Bareiss). Panics unless the matrix is square.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut prev = Int::one();
        let mut sign = 1i32;
        for k in 0..n {
            let mut pivot = None;
            for i in k..n {
                if !m.at(i, k).is_zero() {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot else {
                return Int::zero();
            };
            if pi != k {
                m.swap_rows(k, pi);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    m.set(i, j, &num / &prev);
                }
                m.set(i, k, Int::zero());
            }
            prev = m.at(k, k).clone();
        }
        let det = m.at(n - 1, n - 1).clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

/// Result of [`smith_normal_form`]: `a = u * d * v` with `u`, `v` unimodular
/// and `d` diagonal, nonnegative, with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

/// Smith normal form with deterministic pivoting: the pivot is the entry of
/// smallest nonzero absolute value in the trailing submatrix, ties broken by
/// lowest row index, then lowest column index. Determinism here is what makes
/// the downstream Picard basis reproducible across runs.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let n = a.rows();
    let m = a.cols();
    let mut b = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(m);
    let mut v_inv = IntMatrix::identity(m);

    // Row op helpers keep the invariant a = u * b * v:
    // a row op E on b means u <- u * E^-1 and u_inv <- E * u_inv.
    macro_rules! row_swap {
        ($i:expr, $j:expr) => {{
            b.swap_rows($i, $j);
            u_inv.swap_rows($i, $j);
            u.swap_cols($i, $j);
        }};
    }
    macro_rules! row_negate {
        ($i:expr) => {{
            b.negate_row($i);
            u_inv.negate_row($i);
            u.negate_col($i);
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: Int = $c;
            b.add_row($dst, $src, &c);
            u_inv.add_row($dst, $src, &c);
            u.add_col($src, $dst, &(-c));
        }};
    }
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            b.swap_cols($i, $j);
            v_inv.swap_cols($i, $j);
            v.swap_rows($i, $j);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: Int = $c;
            b.add_col($dst, $src, &c);
            v_inv.add_col($dst, $src, &c);
            v.add_row($src, $dst, &(-c));
        }};
    }

    let bound = n.min(m);
    'outer: for k in 0..bound {
        loop {
            // Deterministic pivot search in the trailing submatrix.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..m {
                    let e = b.at(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let better = match &pivot {
                        None => true,
                        Some((pi, pj)) => e.abs() < b.at(*pi, *pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break 'outer;
            };
            row_swap!(k, pi);
            col_swap!(k, pj);
            if b.at(k, k).is_negative() {
                row_negate!(k);
            }

            let pivot_val = b.at(k, k).clone();
            let mut clean = true;
            for i in k + 1..n {
                if !b.at(i, k).is_zero() {
                    let q = b.at(i, k) / &pivot_val;
                    row_add!(i, k, -q);
                    if !b.at(i, k).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..m {
                if !b.at(k, j).is_zero() {
                    let q = b.at(k, j) / &pivot_val;
                    col_add!(j, k, -q);
                    if !b.at(k, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }

            // Pull the first non-multiple of the pivot into row k so the
            // divisibility chain d_1 | d_2 | ... holds.
            let mut offender = None;
            'div: for i in k + 1..n {
                for j in k + 1..m {
                    if !(b.at(i, j) % &pivot_val).is_zero() {
                        offender = Some(i);
                        break 'div;
                    }
                }
            }
            match offender {
                Some(i) => {
                    row_add!(k, i, Int::one());
                }
                None => break,
            }
        }
    }

    SmithNormalForm {
        u,
        d: b,
        v,
        u_inv,
        v_inv,
    }
}

/// Presentation of the abelian group `Z^n / column-span(A)` with explicit
/// projection and section maps in a deterministic basis.
///
/// The group is `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_1 | t_2 | ...`,
/// every `t_j >= 2`. `project` sends an ambient vector to its coordinates;
/// `lift` produces an ambient representative of given coordinates.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    ambient: usize,
    free_rank: usize,
    torsion: Vec<Int>,
    proj_free: IntMatrix,
    proj_torsion: IntMatrix,
    lift_free: IntMatrix,
    lift_torsion: IntMatrix,
}

/// Presentation of `Z^n / im(A)` where the relations are the columns of `A`
/// (an `n x m` matrix).
pub fn cokernel(a: &IntMatrix) -> AbelianPresentation {
    let n = a.rows();
    let m = a.cols();
    let snf = smith_normal_form(a);
    let bound = n.min(m);

    let mut free_slots = Vec::new();
    let mut torsion_slots = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..n {
        let d = if i < bound {
            snf.d.at(i, i).clone()
        } else {
            Int::zero()
        };
        if d.is_zero() {
            free_slots.push(i);
        } else if d.is_one() {
            // relation kills this coordinate entirely
        } else {
            torsion_slots.push(i);
            torsion.push(d);
        }
    }

    let pick_rows = |slots: &[usize], src: &IntMatrix| {
        IntMatrix::from_rows(slots.iter().map(|&i| src.row(i).to_vec()).collect())
    };
    let pick_cols = |slots: &[usize], src: &IntMatrix| {
        let rows = (0..src.rows())
            .map(|r| slots.iter().map(|&j| src.at(r, j).clone()).collect())
            .collect();
        IntMatrix::from_rows(rows)
    };

    let proj_free = if free_slots.is_empty() {
        IntMatrix::zero(0, n)
    } else {
        pick_rows(&free_slots, &snf.u_inv)
    };
    let proj_torsion = if torsion_slots.is_empty() {
        IntMatrix::zero(0, n)
    } else {
        pick_rows(&torsion_slots, &snf.u_inv)
    };
    let lift_free = if free_slots.is_empty() {
        IntMatrix::zero(n, 0)
    } else {
        pick_cols(&free_slots, &snf.u)
    };
    let lift_torsion = if torsion_slots.is_empty() {
        IntMatrix::zero(n, 0)
    } else {
        pick_cols(&torsion_slots, &snf.u)
    };

    AbelianPresentation {
        ambient: n,
        free_rank: free_slots.len(),
        torsion,
        proj_free,
        proj_torsion,
        lift_free,
        lift_torsion,
    }
}

impl AbelianPresentation {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Torsion invariants `t_1 | t_2 | ...`, each at least 2.
    pub fn torsion_invariants(&self) -> &[Int] {
        &self.torsion
    }

    /// Coordinates of an ambient vector: free part and torsion residues
    /// reduced into `[0, t_j)`.
    pub fn project(&self, x: &[Int]) -> (Vec<Int>, Vec<Int>) {
        assert_eq!(x.len(), self.ambient, "ambient dimension mismatch");
        let free = self.proj_free.mul_vec(x);
        let torsion = self
            .proj_torsion
            .mul_vec(x)
            .into_iter()
            .zip(&self.torsion)
            .map(|(v, t)| v.mod_floor(t))
            .collect();
        (free, torsion)
    }

    /// An ambient representative with the given coordinates.
    pub fn lift(&self, free: &[Int], torsion: &[Int]) -> Vec<Int> {
        assert_eq!(free.len(), self.free_rank, "free rank mismatch");
        assert_eq!(torsion.len(), self.torsion.len(), "torsion length mismatch");
        let a = self.lift_free.mul_vec(free);
        let b = self.lift_torsion.mul_vec(torsion);
        a.into_iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn reduce_torsion(&self, residues: &[Int]) -> Vec<Int> {
        residues
            .iter()
            .zip(&self.torsion)
            .map(|(v, t)| v.mod_floor(t))
            .collect()
    }
}

/// Solve `m * x = rhs` exactly over the rationals. Returns `None` when `m`
/// is singular.
pub fn solve_rational(m: &IntMatrix, rhs: &[Int]) -> Option<Vec<Rat>> {
    assert_eq!(m.rows(), m.cols(), "solve_rational needs a square matrix");
    assert_eq!(m.rows(), rhs.len(), "right-hand side length mismatch");
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rat::from_integer(m.at(i, j).clone()))
                .collect()
        })
        .collect();
    let mut b: Vec<Rat> = rhs.iter().cloned().map(Rat::from_integer).collect();

    for k in 0..n {
        let pivot_row = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot_row);
        b.swap(k, pivot_row);
        let inv = a[k][k].clone();
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &inv;
            for j in k..n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
            let v = &b[i] - &f * &b[k];
            b[i] = v;
        }
    }
    Some(
        (0..n)
            .map(|i| &b[i] / &a[i][i])
            .collect(),
    )
}

/// Basis of the rational kernel `{x : row · x = 0 for all rows}`.
pub fn kernel_basis(rows: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    for row in &a {
        assert_eq!(row.len(), dim, "kernel row dimension mismatch");
    }
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pr) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = a[rank][col].clone();
        for j in 0..dim {
            let v = &a[rank][j] / &inv;
            a[rank][j] = v;
        }
        for i in 0..a.len() {
            if i == rank || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..dim {
                let v = &a[i][j] - &f * &a[rank][j];
                a[i][j] = v;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut vec = vec![Rat::from_integer(Int::zero()); dim];
        vec[free] = Rat::from_integer(Int::one());
        for (r, &p) in pivots.iter().enumerate() {
            vec[p] = -a[r][free].clone();
        }
        basis.push(vec);
    }
    basis
}

/// Scale a rational vector to a primitive integer vector, preserving sign.
/// The zero vector maps to zeros.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = Int::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return ints;
    }
    ints.iter().map(|x| x / &gcd).collect()
}

/// Primitive integer vector with canonical sign: the first nonzero entry is
/// positive. Used when a vector only matters up to sign.
pub fn canonical_sign_vector(v: &[Rat]) -> Vec<Int> {
    let mut w = primitive_integer_vector(v);
    if let Some(first) = w.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut w {
                *x = -x.clone();
            }
        }
    }
    w
}
