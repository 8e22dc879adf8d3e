//! Line bundles O_C(k)(-D) on a plane curve, bases of their global
//! sections, section multiplication, and p-very-ampleness certificates.
//!
//! Sections of O_C(k)(-D) are degree-k forms in normal form modulo the
//! curve equation, subject to one jet condition per multiplicity at each
//! point of D. Bases are echelonized against the graded-lex monomial
//! order, so equal bundles always produce identical bases.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, PlaneCurve};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{Exponents, HomogeneousForm};

/// Effective divisor supported on rational smooth points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Divisor {
    points: BTreeMap<CurvePoint, usize>,
}

impl Divisor {
    pub fn empty() -> Self {
        Divisor::default()
    }

    pub fn single(point: CurvePoint) -> Self {
        let mut d = Divisor::empty();
        d.add(point, 1);
        d
    }

    pub fn add(&mut self, point: CurvePoint, mult: usize) {
        if mult > 0 {
            *self.points.entry(point).or_insert(0) += mult;
        }
    }

    pub fn degree(&self) -> u64 {
        self.points.values().map(|&m| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurvePoint, usize)> {
        self.points.iter().map(|(p, &m)| (p, m))
    }

    pub fn sum(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, m) in other.iter() {
            out.add(*p, m);
        }
        out
    }

    pub fn scaled(&self, n: usize) -> Divisor {
        let mut out = Divisor::empty();
        for (p, m) in self.iter() {
            out.add(*p, m * n);
        }
        out
    }
}

/// The twist-down bundle O_C(k)(-D).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LineBundle {
    twist: i64,
    minus: Divisor,
}

impl LineBundle {
    /// Points of D are revalidated against the given curve.
    pub fn new(curve: &PlaneCurve, twist: i64, minus: Divisor) -> Result<Self> {
        for (p, _) in minus.iter() {
            let q = curve.point(p.input_coords)?;
            if q != *p {
                return Err(Error::CurveMismatch);
            }
        }
        Ok(LineBundle { twist, minus })
    }

    pub fn twist_only(twist: i64) -> Self {
        LineBundle {
            twist,
            minus: Divisor::empty(),
        }
    }

    pub fn canonical(curve: &PlaneCurve) -> Self {
        LineBundle::twist_only(curve.degree() as i64 - 3)
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn minus_divisor(&self) -> &Divisor {
        &self.minus
    }

    pub fn degree(&self, curve: &PlaneCurve) -> i64 {
        self.twist * curve.degree() as i64 - self.minus.degree() as i64
    }

    pub fn is_pure_twist(&self) -> bool {
        self.minus.is_empty()
    }

    /// Tensor with another twist-down bundle on the same curve.
    pub fn tensor(&self, other: &LineBundle) -> LineBundle {
        LineBundle {
            twist: self.twist + other.twist,
            minus: self.minus.sum(&other.minus),
        }
    }

    /// Self ⊗ other^q for q >= 0. For q < 0 the result is only available
    /// when its degree is negative (no sections); a nonnegative-degree
    /// inverse twist has no twist-down representative.
    pub fn tensor_power(
        &self,
        curve: &PlaneCurve,
        other: &LineBundle,
        q: i64,
    ) -> Result<Option<LineBundle>> {
        if q >= 0 {
            Ok(Some(LineBundle {
                twist: self.twist + q * other.twist,
                minus: self.minus.sum(&other.minus.scaled(q as usize)),
            }))
        } else if self.degree(curve) + q * other.degree(curve) < 0 {
            Ok(None)
        } else {
            Err(Error::NotRepresentable(format!(
                "negative tensor power q = {q} with nonnegative degree"
            )))
        }
    }
}

/// Echelonized basis of H^0 of a bundle, as reduced degree-k forms.
#[derive(Debug, Clone)]
pub struct SectionSpace {
    bundle: LineBundle,
    basis: Vec<HomogeneousForm>,
}

impl SectionSpace {
    pub fn bundle(&self) -> &LineBundle {
        &self.bundle
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[HomogeneousForm] {
        &self.basis
    }

    /// Coordinates of a form in this basis; the form is reduced first.
    pub fn express(&self, curve: &PlaneCurve, form: &HomogeneousForm) -> Result<Vec<u64>> {
        let f = curve.field();
        let mut rem = curve.reduce(form);
        let mut coords = vec![0u64; self.basis.len()];
        for (i, b) in self.basis.iter().enumerate() {
            let lead = b.leading_monomial().unwrap();
            let c = rem.coeff(lead);
            if c != 0 {
                // basis vectors have unit leading coefficient
                coords[i] = c;
                rem = rem.sub_scaled(f, c, b);
            }
        }
        if rem.is_zero() {
            Ok(coords)
        } else {
            Err(Error::NotInSpan)
        }
    }
}

/// Basis of H^0(O_C(k)(-D)): normal-form monomials of degree k, cut down
/// by one linear jet condition per multiplicity at each point of D.
pub fn sections(curve: &PlaneCurve, bundle: &LineBundle) -> Result<SectionSpace> {
    let f = curve.field();
    if bundle.twist < 0 {
        return Ok(SectionSpace {
            bundle: bundle.clone(),
            basis: Vec::new(),
        });
    }
    let k = bundle.twist as u16;
    let monos = curve.normal_monomials(k);
    let n = monos.len();
    // jet conditions: rows of constraints on monomial coefficients
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (point, mult) in bundle.minus.iter() {
        let branch = curve.branch_expansion(point, mult)?;
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(n);
        for &e in &monos {
            let m = HomogeneousForm::monomial(f, e, 1);
            cols.push(branch.evaluate(f, &m));
        }
        for order in 0..mult {
            rows.push(cols.iter().map(|c| c[order]).collect());
        }
    }
    let kernel = nullspace(f, rows, n);
    let basis = echelonize(f, kernel)
        .into_iter()
        .map(|v| {
            let mut form = HomogeneousForm::zero(k);
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    form.add_term(f, monos[i], c);
                }
            }
            form
        })
        .collect();
    Ok(SectionSpace {
        bundle: bundle.clone(),
        basis,
    })
}

pub fn h0(curve: &PlaneCurve, bundle: &LineBundle) -> Result<u64> {
    Ok(sections(curve, bundle)?.dim() as u64)
}

/// h^1 via one of three routes: the Serre dual of a pure twist is again a
/// pure twist; degree >= 2g-1 forces zero; otherwise h^0 - deg + g - 1.
pub fn h1(curve: &PlaneCurve, bundle: &LineBundle) -> Result<u64> {
    let g = curve.genus() as i64;
    let deg = bundle.degree(curve);
    if bundle.is_pure_twist() {
        let dual = curve.degree() as i64 - 3 - bundle.twist;
        if dual < 0 {
            return Ok(0);
        }
        return Ok(curve.quotient_dim(dual as u16));
    }
    if deg >= 2 * g - 1 {
        return Ok(0);
    }
    let h0 = h0(curve, bundle)? as i64;
    Ok((h0 - deg + g - 1) as u64)
}

/// Product of two section representatives, reduced to normal form.
pub fn multiply(
    curve: &PlaneCurve,
    s1: &HomogeneousForm,
    s2: &HomogeneousForm,
) -> HomogeneousForm {
    curve.reduce(&s1.mul(curve.field(), s2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VeryAmpleCertificate {
    /// A degree or canonical-bundle criterion settles the question.
    Theoretical { reason: String },
    /// Only rational effective divisors built from the supplied point pool
    /// were checked; all imposed independent conditions.
    RationalDivisor { divisors_checked: usize },
    /// A degree-(p+1) divisor failing to impose independent conditions.
    Counterexample { divisor: Divisor },
}

/// Certifies whether every effective degree-(p+1) divisor imposes p+1
/// independent conditions on sections of B. B must be a pure twist.
///
/// Theoretical passes: deg B >= 2g + p; or B canonical and p <= gon - 2.
/// Otherwise divisors are enumerated as multisets from `pool` (up to
/// `max_divisors`) and each is checked by h^0(B(-xi)) = h^0(B) - p - 1.
pub fn p_very_ample_certificate(
    curve: &PlaneCurve,
    bundle: &LineBundle,
    p: u64,
    pool: &[CurvePoint],
    max_divisors: usize,
) -> Result<VeryAmpleCertificate> {
    if !bundle.is_pure_twist() {
        return Err(Error::DivisorTwistedBundle);
    }
    let g = curve.genus();
    let deg = bundle.degree(curve);
    if deg >= (2 * g + p) as i64 {
        return Ok(VeryAmpleCertificate::Theoretical {
            reason: format!("degree {deg} >= 2g + p = {}", 2 * g + p),
        });
    }
    if bundle.twist == curve.degree() as i64 - 3 && p + 2 <= curve.gonality() {
        return Ok(VeryAmpleCertificate::Theoretical {
            reason: format!(
                "canonical bundle with p = {p} <= gonality - 2 = {}",
                curve.gonality() - 2
            ),
        });
    }
    let h0_full = h0(curve, bundle)?;
    let want = h0_full as i64 - (p as i64 + 1);
    let mut checked = 0usize;
    for divisor in multisets(pool, p as usize + 1, max_divisors) {
        if want < 0 {
            // fewer than p+1 sections can never impose p+1 conditions
            return Ok(VeryAmpleCertificate::Counterexample { divisor });
        }
        let twisted = LineBundle {
            twist: bundle.twist,
            minus: divisor.clone(),
        };
        let have = h0(curve, &twisted)? as i64;
        checked += 1;
        if have != want {
            return Ok(VeryAmpleCertificate::Counterexample { divisor });
        }
    }
    Ok(VeryAmpleCertificate::RationalDivisor {
        divisors_checked: checked,
    })
}

/// All multisets of the given size from the pool, in pool order, capped.
fn multisets(pool: &[CurvePoint], size: usize, cap: usize) -> Vec<Divisor> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        pool: &[CurvePoint],
        size: usize,
        cap: usize,
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Divisor>,
    ) {
        if out.len() >= cap {
            return;
        }
        if stack.len() == size {
            let mut d = Divisor::empty();
            for &i in stack.iter() {
                d.add(pool[i], 1);
            }
            out.push(d);
            return;
        }
        for i in start..pool.len() {
            stack.push(i);
            rec(pool, size, cap, i, stack, out);
            stack.pop();
        }
    }
    rec(pool, size, cap, 0, &mut stack, &mut out);
    out
}

fn nullspace(field: &PrimeField, rows: Vec<Vec<u64>>, n: usize) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.into_iter().filter(|r| r.iter().any(|&c| c != 0)).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(a[r][c]).unwrap();
        for x in a[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let s = a[i][c];
                for j in 0..n {
                    let t = field.mul(s, a[r][j]);
                    a[i][j] = field.sub(a[i][j], t);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    let mut kernel = Vec::new();
    for free in 0..n {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = field.neg(a[row][free]);
        }
        kernel.push(v);
    }
    kernel
}

/// Reduced echelon form against the monomial order: index n-1 is the
/// largest monomial, so pivots are chosen from the top index downward.
/// Output sorted by descending pivot, pivot entries normalized to 1.
fn echelonize(field: &PrimeField, vecs: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
    for mut v in vecs {
        loop {
            let Some(lead) = v.iter().rposition(|&c| c != 0) else {
                break;
            };
            if let Some((_, pivot)) = rows.iter().find(|(l, _)| *l == lead) {
                let s = v[lead];
                for (x, p) in v.iter_mut().zip(pivot.iter()) {
                    *x = field.sub(*x, field.mul(s, *p));
                }
            } else {
                let inv = field.inv(v[lead]).unwrap();
                for x in v.iter_mut() {
                    *x = field.mul(*x, inv);
                }
                rows.push((lead, v));
                break;
            }
        }
    }
    rows.sort_by(|a, b| b.0.cmp(&a.0));
    // back-substitute from the smallest pivot upward: a row only contains
    // pivots below its own lead, and those rows are reduced first
    for i in (0..rows.len()).rev() {
        for j in (i + 1)..rows.len() {
            let lead = rows[j].0;
            let s = rows[i].1[lead];
            if s != 0 {
                let pivot = rows[j].1.clone();
                for (x, p) in rows[i].1.iter_mut().zip(pivot.iter()) {
                    *x = field.sub(*x, field.mul(s, *p));
                }
            }
        }
    }
    rows.into_iter().map(|(_, v)| v).collect()
}

/// Per-curve memo table of computed section spaces. Concurrent readers,
/// single effective writer per key (duplicate computations are benign and
/// produce identical values).
#[derive(Default)]
pub struct SectionCache {
    map: RwLock<HashMap<LineBundle, Arc<SectionSpace>>>,
}

impl SectionCache {
    pub fn new() -> Self {
        SectionCache::default()
    }

    pub fn get(&self, curve: &PlaneCurve, bundle: &LineBundle) -> Result<Arc<SectionSpace>> {
        if let Some(hit) = self.map.read().unwrap().get(bundle) {
            return Ok(hit.clone());
        }
        let space = Arc::new(sections(curve, bundle)?);
        let mut w = self.map.write().unwrap();
        Ok(w.entry(bundle.clone()).or_insert(space).clone())
    }
}

/// Basis monomials used by tests and reporting.
pub fn monomial_basis(curve: &PlaneCurve, k: u16) -> Vec<Exponents> {
    curve.normal_monomials(k)
}
