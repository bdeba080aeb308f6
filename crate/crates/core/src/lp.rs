//! Exact rational linear feasibility and lattice-point enumeration.
//!
//! The engine is Fourier-Motzkin elimination over arbitrary-precision
//! rationals. Strict inequalities propagate natively through combinations
//! (a combination is strict as soon as one participant is), equalities are
//! eliminated by substitution, and every derived row carries the nonnegative
//! combination of input constraints it came from, so infeasibility always
//! comes with a checkable Farkas certificate.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::matrix::primitive_integer_vector;
use crate::{Int, Rat};

/// Relation of a single constraint `coeffs · x REL rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Ge,
    Gt,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn holds_at(&self, point: &[Rat]) -> bool {
        let lhs = crate::dot(&self.coeffs, point);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// A finite system of linear constraints in `Q^dim`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) {
        assert_eq!(coeffs.len(), self.dim, "constraint dimension mismatch");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn ge(&mut self, coeffs: Vec<Rat>, rhs: Rat) {
        self.push(coeffs, Relation::Ge, rhs);
    }

    pub fn gt(&mut self, coeffs: Vec<Rat>, rhs: Rat) {
        self.push(coeffs, Relation::Gt, rhs);
    }

    pub fn eq(&mut self, coeffs: Vec<Rat>, rhs: Rat) {
        self.push(coeffs, Relation::Eq, rhs);
    }

    pub fn holds_at(&self, point: &[Rat]) -> bool {
        self.constraints.iter().all(|c| c.holds_at(point))
    }
}

/// One term of a Farkas certificate: `multiplier` times constraint `index`,
/// where `reversed` (only meaningful for equalities) selects the inequality
/// `-coeffs · x >= -rhs` instead of `coeffs · x >= rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateEntry {
    pub index: usize,
    pub multiplier: Rat,
    pub reversed: bool,
}

/// Nonnegative combination of constraints contracting to `0 > c` with
/// `c >= 0`, or `0 >= c` with `c > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FarkasCertificate {
    pub entries: Vec<CertificateEntry>,
}

impl FarkasCertificate {
    /// Re-derive the contradiction by exact arithmetic.
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        let mut sum = vec![Rat::zero(); sys.dim];
        let mut rhs = Rat::zero();
        let mut strict = false;
        for entry in &self.entries {
            let Some(c) = sys.constraints.get(entry.index) else {
                return false;
            };
            if entry.multiplier.is_negative() {
                return false;
            }
            if entry.reversed && c.relation != Relation::Eq {
                return false;
            }
            let m = if entry.reversed {
                -entry.multiplier.clone()
            } else {
                entry.multiplier.clone()
            };
            for (acc, coeff) in sum.iter_mut().zip(&c.coeffs) {
                *acc += &m * coeff;
            }
            rhs += &m * &c.rhs;
            if c.relation == Relation::Gt && entry.multiplier.is_positive() {
                strict = true;
            }
        }
        if sum.iter().any(|v| !v.is_zero()) {
            return false;
        }
        // The combination reads 0 >= rhs (or 0 > rhs when strict).
        if strict {
            rhs >= Rat::zero()
        } else {
            rhs.is_positive()
        }
    }
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Feasible(Vec<Rat>),
    Infeasible(FarkasCertificate),
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticePoints {
    Points(Vec<Vec<Int>>),
    Unbounded,
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin engine
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rat>,
    relation: Relation,
    rhs: Rat,
    /// Combination of original constraints this row is derived from.
    /// Multipliers are nonnegative except on equality rows.
    combo: BTreeMap<usize, Rat>,
}

impl Row {
    fn from_constraint(index: usize, c: &Constraint) -> Self {
        let mut combo = BTreeMap::new();
        combo.insert(index, Rat::one());
        let mut row = Row {
            coeffs: c.coeffs.clone(),
            relation: c.relation,
            rhs: c.rhs.clone(),
            combo,
        };
        row.normalize();
        row
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Whether the constant row `0 REL rhs` holds.
    fn constant_holds(&self) -> bool {
        match self.relation {
            Relation::Ge => !self.rhs.is_positive(),
            Relation::Gt => self.rhs.is_negative(),
            Relation::Eq => self.rhs.is_zero(),
        }
    }

    /// Scale by a positive rational so coefficients and rhs are primitive
    /// integers; the combination is scaled along to stay exact.
    fn normalize(&mut self) {
        let mut all = self.coeffs.clone();
        all.push(self.rhs.clone());
        let ints = primitive_integer_vector(&all);
        if ints.iter().all(Int::is_zero) {
            return;
        }
        // Recover the applied positive factor from any nonzero entry.
        let idx = all.iter().position(|v| !v.is_zero()).expect("nonzero entry");
        let factor = Rat::from_integer(ints[idx].clone()) / &all[idx];
        debug_assert!(factor.is_positive());
        for (dst, v) in self.coeffs.iter_mut().zip(&ints) {
            *dst = Rat::from_integer(v.clone());
        }
        self.rhs = Rat::from_integer(ints[self.coeffs.len()].clone());
        for m in self.combo.values_mut() {
            *m = &*m * &factor;
        }
    }
}

fn combine(a: &Row, ca: &Rat, b: &Row, cb: &Rat, relation: Relation) -> Row {
    let coeffs = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| ca * x + cb * y)
        .collect();
    let rhs = ca * &a.rhs + cb * &b.rhs;
    let mut combo = a.combo.clone();
    for (k, v) in combo.iter_mut() {
        let _ = k;
        *v = &*v * ca;
    }
    for (k, v) in &b.combo {
        let add = cb * v;
        combo
            .entry(*k)
            .and_modify(|m| *m += &add)
            .or_insert(add);
    }
    combo.retain(|_, v| !v.is_zero());
    let mut row = Row {
        coeffs,
        relation,
        rhs,
        combo,
    };
    row.normalize();
    row
}

fn certificate_from_row(row: &Row, sys: &LinearSystem) -> FarkasCertificate {
    // A violated equality row 0 = rhs with rhs < 0 certifies through its
    // negation 0 = -rhs; all participants are equalities, so flipping the
    // combination is legitimate.
    let flip = row.relation == Relation::Eq && row.rhs.is_negative();
    let mut entries = Vec::new();
    for (&index, m) in &row.combo {
        let m = &if flip { -m.clone() } else { m.clone() };
        if m.is_zero() {
            continue;
        }
        if m.is_negative() {
            debug_assert_eq!(sys.constraints[index].relation, Relation::Eq);
            entries.push(CertificateEntry {
                index,
                multiplier: -m.clone(),
                reversed: true,
            });
        } else {
            entries.push(CertificateEntry {
                index,
                multiplier: m.clone(),
                reversed: false,
            });
        }
    }
    FarkasCertificate { entries }
}

/// Eliminate `var` from the rows. `Err` carries a violated constant row.
fn eliminate(mut rows: Vec<Row>, var: usize) -> Result<Vec<Row>, Row> {
    // Substitution through an equality row when available.
    if let Some(pos) = rows
        .iter()
        .position(|r| r.relation == Relation::Eq && !r.coeffs[var].is_zero())
    {
        let eq = rows.remove(pos);
        let mut out = Vec::new();
        for r in rows {
            if r.coeffs[var].is_zero() {
                out.push(r);
                continue;
            }
            let f = -(&r.coeffs[var] / &eq.coeffs[var]);
            let combined = combine(&r, &Rat::one(), &eq, &f, r.relation);
            if combined.is_constant() && !combined.constant_holds() {
                return Err(combined);
            }
            out.push(combined);
        }
        return Ok(dedup(out));
    }

    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    let mut rest = Vec::new();
    for r in rows {
        if r.coeffs[var].is_positive() {
            lowers.push(r);
        } else if r.coeffs[var].is_negative() {
            uppers.push(r);
        } else {
            rest.push(r);
        }
    }
    for l in &lowers {
        for u in &uppers {
            let ml = -u.coeffs[var].clone();
            let mu = l.coeffs[var].clone();
            let relation = if l.relation == Relation::Gt || u.relation == Relation::Gt {
                Relation::Gt
            } else {
                Relation::Ge
            };
            let combined = combine(l, &ml, u, &mu, relation);
            if combined.is_constant() {
                if !combined.constant_holds() {
                    return Err(combined);
                }
                continue;
            }
            rest.push(combined);
        }
    }
    Ok(dedup(rest))
}

/// Keep, per coefficient vector, only the tightest inequality. Equality rows
/// are kept verbatim (merging them could silently drop an inconsistency).
fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut eqs = Vec::new();
    let mut best: BTreeMap<Vec<Rat>, Row> = BTreeMap::new();
    for r in rows {
        if r.relation == Relation::Eq {
            eqs.push(r);
            continue;
        }
        if r.is_constant() && r.constant_holds() {
            continue;
        }
        match best.get(&r.coeffs) {
            None => {
                best.insert(r.coeffs.clone(), r);
            }
            Some(prev) => {
                let tighter = r.rhs > prev.rhs
                    || (r.rhs == prev.rhs
                        && r.relation == Relation::Gt
                        && prev.relation == Relation::Ge);
                if tighter {
                    best.insert(r.coeffs.clone(), r);
                }
            }
        }
    }
    let mut out = eqs;
    out.extend(best.into_values());
    out
}

fn initial_rows(sys: &LinearSystem) -> Result<Vec<Row>, Row> {
    let mut rows = Vec::new();
    for (i, c) in sys.constraints.iter().enumerate() {
        let row = Row::from_constraint(i, c);
        if row.is_constant() && !row.constant_holds() {
            return Err(row);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Decide feasibility of a mixed weak/strict/equality system exactly.
///
/// On success the returned point satisfies every constraint, strict ones
/// strictly; on failure the certificate verifies against the input system.
pub fn lp_feasible(sys: &LinearSystem) -> LpOutcome {
    let mut rows = match initial_rows(sys) {
        Ok(r) => r,
        Err(row) => return LpOutcome::Infeasible(certificate_from_row(&row, sys)),
    };

    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(sys.dim);
    for var in 0..sys.dim {
        stages.push(rows.clone());
        rows = match eliminate(rows, var) {
            Ok(r) => r,
            Err(row) => return LpOutcome::Infeasible(certificate_from_row(&row, sys)),
        };
    }
    for r in &rows {
        debug_assert!(r.is_constant());
        if !r.constant_holds() {
            return LpOutcome::Infeasible(certificate_from_row(r, sys));
        }
    }

    // Back-substitution, last variable first.
    let mut values = vec![Rat::zero(); sys.dim];
    for var in (0..sys.dim).rev() {
        let mut pinned: Option<Rat> = None;
        let mut lower: Option<(Rat, bool)> = None;
        let mut upper: Option<(Rat, bool)> = None;
        for r in &stages[var] {
            let c = &r.coeffs[var];
            if c.is_zero() {
                continue;
            }
            let mut rest = Rat::zero();
            for j in var + 1..sys.dim {
                rest += &r.coeffs[j] * &values[j];
            }
            let bound = (&r.rhs - rest) / c;
            match r.relation {
                Relation::Eq => {
                    debug_assert!(pinned.as_ref().is_none_or(|p| *p == bound));
                    pinned.get_or_insert(bound);
                }
                _ => {
                    let strict = r.relation == Relation::Gt;
                    if c.is_positive() {
                        let replace = match &lower {
                            None => true,
                            Some((lv, ls)) => bound > *lv || (bound == *lv && strict && !ls),
                        };
                        if replace {
                            lower = Some((bound, strict));
                        }
                    } else {
                        let replace = match &upper {
                            None => true,
                            Some((uv, us)) => bound < *uv || (bound == *uv && strict && !us),
                        };
                        if replace {
                            upper = Some((bound, strict));
                        }
                    }
                }
            }
        }
        values[var] = choose_value(pinned, lower, upper);
    }
    debug_assert!(sys.holds_at(&values));
    LpOutcome::Feasible(values)
}

/// Pick a point in a nonempty interval, preferring simple values.
fn choose_value(
    pinned: Option<Rat>,
    lower: Option<(Rat, bool)>,
    upper: Option<(Rat, bool)>,
) -> Rat {
    if let Some(p) = pinned {
        return p;
    }
    let ok = |v: &Rat| {
        lower
            .as_ref()
            .is_none_or(|(l, s)| if *s { v > l } else { v >= l })
            && upper
                .as_ref()
                .is_none_or(|(u, s)| if *s { v < u } else { v <= u })
    };
    match (&lower, &upper) {
        (None, None) => Rat::zero(),
        (Some((l, strict)), None) => {
            if *strict {
                l.floor() + Rat::one()
            } else {
                l.clone()
            }
        }
        (None, Some((u, strict))) => {
            if *strict {
                u.ceil() - Rat::one()
            } else {
                u.clone()
            }
        }
        (Some((l, ls)), Some((u, us))) => {
            if !*ls && ok(l) {
                return l.clone();
            }
            if !*us && ok(u) {
                return u.clone();
            }
            let t = u.floor();
            if ok(&t) {
                return t;
            }
            let t = l.ceil();
            if ok(&t) {
                return t;
            }
            (l + u) / Rat::from_integer(Int::from(2))
        }
    }
}

/// Project the system onto its first `keep` variables by eliminating the
/// rest. `None` means the system is infeasible.
pub(crate) fn project_to_prefix(sys: &LinearSystem, keep: usize) -> Option<Vec<Constraint>> {
    assert!(keep <= sys.dim);
    let mut rows = initial_rows(sys).ok()?;
    for var in (keep..sys.dim).rev() {
        rows = eliminate(rows, var).ok()?;
    }
    let mut out = Vec::new();
    for r in rows {
        if r.is_constant() {
            debug_assert!(r.constant_holds());
            continue;
        }
        debug_assert!(r.coeffs[keep..].iter().all(Rat::is_zero));
        out.push(Constraint {
            coeffs: r.coeffs[..keep].to_vec(),
            relation: r.relation,
            rhs: r.rhs,
        });
    }
    Some(out)
}

/// Exact integer points of a polyhedron given by weak inequalities and
/// equalities. `Unbounded` is returned exactly when the recession cone is
/// nonzero, detected through `lp_feasible` on the homogenized system.
pub fn lattice_points(sys: &LinearSystem) -> Result<LatticePoints, Error> {
    if sys
        .constraints
        .iter()
        .any(|c| c.relation == Relation::Gt)
    {
        return Err(Error::StrictRelation);
    }

    // Recession cone test: any nonzero solution of the homogenized system.
    let mut homog = LinearSystem::new(sys.dim);
    for c in &sys.constraints {
        homog.push(c.coeffs.clone(), c.relation, Rat::zero());
    }
    for j in 0..sys.dim {
        for sign in [1i64, -1] {
            let mut probe = homog.clone();
            let mut coeffs = vec![Rat::zero(); sys.dim];
            coeffs[j] = crate::rat(sign);
            probe.gt(coeffs, Rat::zero());
            if lp_feasible(&probe).is_feasible() {
                return Ok(LatticePoints::Unbounded);
            }
        }
    }

    if sys.dim == 0 {
        let feasible = sys
            .constraints
            .iter()
            .all(|c| Constraint::holds_at(c, &[]));
        return Ok(LatticePoints::Points(if feasible {
            vec![vec![]]
        } else {
            vec![]
        }));
    }

    // Chain of projections: proj[j] involves variables 0..=j.
    let mut proj: Vec<Vec<Row>> = vec![Vec::new(); sys.dim];
    let mut rows = match initial_rows(sys) {
        Ok(r) => r,
        Err(_) => return Ok(LatticePoints::Points(vec![])),
    };
    proj[sys.dim - 1] = rows.clone();
    for j in (1..sys.dim).rev() {
        rows = match eliminate(rows, j) {
            Ok(r) => r,
            Err(_) => return Ok(LatticePoints::Points(vec![])),
        };
        proj[j - 1] = rows.clone();
    }

    let mut points = Vec::new();
    let mut prefix: Vec<Rat> = Vec::with_capacity(sys.dim);
    let mut prefix_ints: Vec<Int> = Vec::with_capacity(sys.dim);
    enumerate_level(sys, &proj, 0, &mut prefix, &mut prefix_ints, &mut points)?;
    Ok(LatticePoints::Points(points))
}

fn enumerate_level(
    sys: &LinearSystem,
    proj: &[Vec<Row>],
    level: usize,
    prefix: &mut Vec<Rat>,
    prefix_ints: &mut Vec<Int>,
    points: &mut Vec<Vec<Int>>,
) -> Result<(), Error> {
    let mut lower: Option<Rat> = None;
    let mut upper: Option<Rat> = None;
    for r in &proj[level] {
        let c = &r.coeffs[level];
        if c.is_zero() {
            continue;
        }
        let mut rest = Rat::zero();
        for j in 0..level {
            rest += &r.coeffs[j] * &prefix[j];
        }
        let bound = (&r.rhs - rest) / c;
        let (is_lower, is_upper) = match r.relation {
            Relation::Eq => (true, true),
            _ => (c.is_positive(), c.is_negative()),
        };
        if is_lower && lower.as_ref().is_none_or(|l| bound > *l) {
            lower = Some(bound.clone());
        }
        if is_upper && upper.as_ref().is_none_or(|u| bound < *u) {
            upper = Some(bound);
        }
    }
    let (Some(lo), Some(hi)) = (lower, upper) else {
        // A bounded polyhedron projects to bounded intervals on every level.
        return Err(Error::Inconsistency(
            "missing coordinate bound on a bounded polyhedron".into(),
        ));
    };
    let mut t = lo.ceil().to_integer();
    let hi_int = hi.floor().to_integer();
    while t <= hi_int {
        prefix.push(Rat::from_integer(t.clone()));
        prefix_ints.push(t.clone());
        if level + 1 == proj.len() {
            debug_assert!(sys.holds_at(prefix));
            points.push(prefix_ints.clone());
        } else {
            enumerate_level(sys, proj, level + 1, prefix, prefix_ints, points)?;
        }
        prefix.pop();
        prefix_ints.pop();
        t += Int::one();
    }
    Ok(())
}
