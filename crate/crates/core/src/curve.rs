//! Smooth plane curves over GF(p): validation, rational points, local
//! branch expansions, and normal forms modulo the defining equation.
//!
//! Internally every curve is put in a frame where the coefficient of z^d is
//! nonzero (a recorded shear x -> x + a·z, y -> y + b·z), so reduction to
//! z-degree < d gives canonical representatives in the coordinate ring.

use serde::{Deserialize, Serialize};

use crate::comb::binom_i64;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{other_vars, Exponents, HomogeneousForm};
use crate::sparse::{RankConfig, SparseMatrix};
use crate::univar;

/// How far the affine scans walk before giving up on finding more points.
const SCAN_LIMIT: u64 = 10_000;

/// How smoothness was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmoothnessCertificate {
    /// The Jacobian ideal was shown to contain every monomial of the stated
    /// degree, so the gradient has no projective zero over the closure.
    Elimination { degree_checked: u16 },
    /// The gradient was checked at every scanned rational point only.
    Sampled { points_checked: usize },
}

#[derive(Debug, Clone)]
pub struct PlaneCurve {
    field: PrimeField,
    degree: u16,
    genus: u64,
    input_form: HomogeneousForm,
    /// Defining form in the sheared frame; its z^d coefficient is nonzero.
    form: HomogeneousForm,
    /// The shear (a, b): input coords = (x + a·z, y + b·z, z).
    shift: [u64; 2],
    certificate: SmoothnessCertificate,
}

/// Rational smooth point, kept in the curve's internal frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurvePoint {
    /// Internal coordinates, scaled so the last nonzero one is 1.
    pub coords: [u64; 3],
    /// The same point in the input frame, same normalization.
    pub input_coords: [u64; 3],
    /// Index of the affine chart (the coordinate equal to 1).
    pub chart: usize,
    /// Whether the tangent is vertical in that chart (the partial with
    /// respect to the second affine variable vanishes).
    pub tangent_vertical: bool,
}

impl CurvePoint {
    /// Affine coordinates (u, v) in the point's chart.
    pub fn affine(&self) -> (u64, u64) {
        let (u, v) = other_vars(self.chart);
        (self.coords[u], self.coords[v])
    }
}

/// Power-series parameterization of the unique local branch at a smooth
/// point: t -> (u(t), v(t)) in the point's affine chart, with the defining
/// equation vanishing to order `precision`.
#[derive(Debug, Clone)]
pub struct BranchExpansion {
    pub point: CurvePoint,
    pub precision: usize,
    /// True when the tangent was vertical and the variable roles were
    /// exchanged (a recorded linear change) before solving.
    pub swapped: bool,
    u_series: Vec<u64>,
    v_series: Vec<u64>,
}

impl BranchExpansion {
    pub fn series(&self) -> (&[u64], &[u64]) {
        (&self.u_series, &self.v_series)
    }

    /// First `precision` Taylor coefficients of a form along the branch
    /// (trivialized on the chart by dividing by chart-coordinate^degree).
    pub fn evaluate(&self, field: &PrimeField, form: &HomogeneousForm) -> Vec<u64> {
        form.dehomogenize(self.point.chart).eval_series(
            field,
            &self.u_series,
            &self.v_series,
            self.precision,
        )
    }
}

impl PlaneCurve {
    pub fn new(field: PrimeField, input_form: HomogeneousForm) -> Result<Self> {
        let d = input_form.degree();
        if input_form.is_zero() {
            return Err(Error::ZeroForm);
        }
        if d < 3 {
            return Err(Error::DegreeTooSmall(d));
        }
        if field.modulus() <= 4 * d as u64 {
            return Err(Error::CharacteristicTooSmall {
                p: field.modulus(),
                d,
            });
        }
        let shift = find_shear(&field, &input_form)?;
        let form = apply_shear(&field, &input_form, shift);
        debug_assert_ne!(form.coeff([0, 0, d]), 0);
        let certificate = certify_smooth(&field, &form, shift)?;
        let g = ((d as u64 - 1) * (d as u64 - 2)) / 2;
        Ok(PlaneCurve {
            field,
            degree: d,
            genus: g,
            input_form,
            form,
            shift,
            certificate,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn degree(&self) -> u16 {
        self.degree
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// d - 1 for smooth plane curves of degree d >= 3.
    pub fn gonality(&self) -> u64 {
        self.degree as u64 - 1
    }

    /// d - 4 for d >= 5, else the small-genus convention 0.
    pub fn clifford_index(&self) -> u64 {
        if self.degree >= 5 {
            self.degree as u64 - 4
        } else {
            0
        }
    }

    /// Defining form in the internal (sheared) frame.
    pub fn form(&self) -> &HomogeneousForm {
        &self.form
    }

    pub fn input_form(&self) -> &HomogeneousForm {
        &self.input_form
    }

    pub fn certificate(&self) -> SmoothnessCertificate {
        self.certificate
    }

    pub fn to_internal(&self, p: [u64; 3]) -> [u64; 3] {
        let f = &self.field;
        [
            f.sub(p[0], f.mul(self.shift[0], p[2])),
            f.sub(p[1], f.mul(self.shift[1], p[2])),
            p[2],
        ]
    }

    pub fn to_input(&self, q: [u64; 3]) -> [u64; 3] {
        let f = &self.field;
        [
            f.add(q[0], f.mul(self.shift[0], q[2])),
            f.add(q[1], f.mul(self.shift[1], q[2])),
            q[2],
        ]
    }

    /// Validates a point given in input-frame coordinates.
    pub fn point(&self, input: [u64; 3]) -> Result<CurvePoint> {
        let f = &self.field;
        let input = [f.reduce(input[0]), f.reduce(input[1]), f.reduce(input[2])];
        if input == [0, 0, 0] {
            return Err(Error::PointNotOnCurve(0, 0, 0));
        }
        let q = self.to_internal(input);
        if self.form.eval(f, q) != 0 {
            return Err(Error::PointNotOnCurve(input[0], input[1], input[2]));
        }
        let q = normalize(f, q);
        if self.gradient(q) == [0, 0, 0] {
            return Err(Error::SingularPoint(input[0], input[1], input[2]));
        }
        Ok(self.make_point(q))
    }

    fn gradient(&self, q: [u64; 3]) -> [u64; 3] {
        let f = &self.field;
        [
            self.form.partial(f, 0).eval(f, q),
            self.form.partial(f, 1).eval(f, q),
            self.form.partial(f, 2).eval(f, q),
        ]
    }

    /// q must be normalized, on the curve, and smooth.
    fn make_point(&self, q: [u64; 3]) -> CurvePoint {
        let f = &self.field;
        let chart = (0..3).rev().find(|&i| q[i] != 0).unwrap();
        let (_, v) = other_vars(chart);
        let tangent_vertical = self.form.partial(f, v).eval(f, q) == 0;
        CurvePoint {
            coords: q,
            input_coords: self.to_input(q),
            chart,
            tangent_vertical,
        }
    }

    /// Up to `max_count` distinct smooth rational points in a fixed scan
    /// order: (1:0:0), then the line z = 0 by ascending x, then affine
    /// points (x:y:1) by ascending x then y.
    pub fn rational_points(&self, max_count: usize) -> Vec<CurvePoint> {
        let f = &self.field;
        let mut out = Vec::new();
        if max_count == 0 {
            return out;
        }
        let push = |out: &mut Vec<CurvePoint>, q: [u64; 3]| -> bool {
            if self.gradient(q) != [0, 0, 0] {
                out.push(self.make_point(q));
            }
            out.len() >= max_count
        };
        if self.form.eval(f, [1, 0, 0]) == 0 && push(&mut out, [1, 0, 0]) {
            return out;
        }
        // dehomogenize(1) keeps (x, z); swapping makes z the evaluated
        // variable, leaving the restriction to z = 0 as a polynomial in x
        let on_line = self.form.dehomogenize(1).swap_vars().univariate_in_v(f, 0);
        if !univar::is_zero(&on_line) {
            for x in univar::roots(f, &on_line) {
                if push(&mut out, [x, 1, 0]) {
                    return out;
                }
            }
        }
        let affine = self.form.dehomogenize(2);
        let limit = SCAN_LIMIT.min(f.modulus());
        for x0 in 0..limit {
            let uni = affine.univariate_in_v(f, x0);
            if univar::is_zero(&uni) {
                continue;
            }
            for y in univar::roots(f, &uni) {
                if push(&mut out, [x0, y, 1]) {
                    return out;
                }
            }
        }
        out
    }

    /// Solves the branch series at a smooth point by undetermined
    /// coefficients: the free variable steps as t, and each coefficient of
    /// the dependent series is fixed by cancelling one order of the
    /// defining equation.
    pub fn branch_expansion(&self, point: &CurvePoint, precision: usize) -> Result<BranchExpansion> {
        if precision == 0 {
            return Err(Error::BadPrecision);
        }
        let f = &self.field;
        let chart = point.chart;
        let (uvar, vvar) = other_vars(chart);
        let (u0, v0) = point.affine();
        let biv = self.form.dehomogenize(chart);
        let (g, dep_var, a0, b0) = if point.tangent_vertical {
            // recorded swap of the two affine variables
            (biv.swap_vars(), uvar, v0, u0)
        } else {
            (biv, vvar, u0, v0)
        };
        let slope = self.form.partial(f, dep_var).eval(f, point.coords);
        debug_assert_ne!(slope, 0, "point must be smooth");
        let slope_inv = f.inv(slope)?;
        let mut param = vec![0u64; precision];
        param[0] = a0;
        if precision > 1 {
            param[1] = 1;
        }
        let mut dep = vec![b0];
        for j in 1..precision {
            dep.push(0);
            let res = g.eval_series(f, &param, &dep, j + 1);
            debug_assert!(res[..j].iter().all(|&c| c == 0));
            dep[j] = f.neg(f.mul(res[j], slope_inv));
        }
        let (u_series, v_series) = if point.tangent_vertical {
            (dep, param)
        } else {
            (param, dep)
        };
        Ok(BranchExpansion {
            point: *point,
            precision,
            swapped: point.tangent_vertical,
            u_series,
            v_series,
        })
    }

    /// Canonical representative modulo the defining form: same class in the
    /// coordinate ring, z-degree < d.
    pub fn reduce(&self, form: &HomogeneousForm) -> HomogeneousForm {
        let f = &self.field;
        let d = self.degree;
        let lead_inv = f.inv(self.form.coeff([0, 0, d])).unwrap();
        let mut out = form.clone();
        loop {
            let target = out
                .terms()
                .filter(|(e, _)| e[2] >= d)
                .max_by_key(|(e, _)| e[2]);
            let Some((e, c)) = target else { break };
            let scale = f.mul(c, lead_inv);
            let multiplier = HomogeneousForm::monomial(f, [e[0], e[1], e[2] - d], 1);
            out = out.sub_scaled(f, scale, &multiplier.mul(f, &self.form));
        }
        out
    }

    /// Dimension of the degree-k graded piece of the coordinate ring.
    pub fn quotient_dim(&self, k: u16) -> u64 {
        let d = self.degree as i64;
        let k = k as i64;
        binom_i64(k + 2, 2) - binom_i64(k - d + 2, 2)
    }

    /// The canonical monomial basis of the degree-k piece: all exponent
    /// triples with z-degree < d, in ascending lexicographic order.
    pub fn normal_monomials(&self, k: u16) -> Vec<Exponents> {
        let mut out = Vec::new();
        for a in 0..=k {
            for b in 0..=(k - a) {
                let e = k - a - b;
                if e < self.degree {
                    out.push([a, b, e]);
                }
            }
        }
        debug_assert_eq!(out.len() as u64, self.quotient_dim(k));
        out
    }
}

fn normalize(field: &PrimeField, q: [u64; 3]) -> [u64; 3] {
    let last = (0..3).rev().find(|&i| q[i] != 0).unwrap();
    let inv = field.inv(q[last]).unwrap();
    [
        field.mul(q[0], inv),
        field.mul(q[1], inv),
        field.mul(q[2], inv),
    ]
}

/// Finds (a, b) with F(a, b, 1) != 0, so the sheared form has a nonzero
/// z^d coefficient. The dehomogenization is a nonzero polynomial of degree
/// <= d, so a (2d+1)^2 grid always contains a non-root.
fn find_shear(field: &PrimeField, form: &HomogeneousForm) -> Result<[u64; 2]> {
    let d = form.degree() as u64;
    for a in 0..=2 * d {
        for b in 0..=2 * d {
            if form.eval(field, [a, b, 1]) != 0 {
                return Ok([a, b]);
            }
        }
    }
    unreachable!("nonzero form vanishing on a grid larger than its degree");
}

fn apply_shear(field: &PrimeField, form: &HomogeneousForm, shift: [u64; 2]) -> HomogeneousForm {
    if shift == [0, 0] {
        return form.clone();
    }
    let m = [[1, 0, shift[0]], [0, 1, shift[1]], [0, 0, 1]];
    form.substitute_linear(field, &m)
}

/// For d <= 6: exact certificate that the three partials generate every
/// monomial of degree 3d-5, which forces the gradient to have no common
/// projective zero. Above that, the gradient is checked on scanned
/// rational points only.
fn certify_smooth(
    field: &PrimeField,
    form: &HomogeneousForm,
    shift: [u64; 2],
) -> Result<SmoothnessCertificate> {
    let d = form.degree();
    let partials: Vec<HomogeneousForm> = (0..3).map(|v| form.partial(field, v)).collect();
    if d <= 6 {
        let t = 3 * d - 5;
        let cols_per = monomials_of_degree(t - (d - 1));
        let row_index: std::collections::BTreeMap<Exponents, u32> = monomials_of_degree(t)
            .into_iter()
            .enumerate()
            .map(|(i, e)| (e, i as u32))
            .collect();
        let mut triplets = Vec::new();
        let mut col = 0u32;
        for part in &partials {
            for mono in &cols_per {
                let m = HomogeneousForm::monomial(field, *mono, 1);
                for (e, c) in m.mul(field, part).terms() {
                    triplets.push((row_index[&e], col, c));
                }
                col += 1;
            }
        }
        let rows = row_index.len();
        let matrix = SparseMatrix::from_triplets(field, rows, col as usize, triplets)?;
        let rank = matrix.rank(field, &RankConfig::default()).rank;
        if rank == rows {
            Ok(SmoothnessCertificate::Elimination { degree_checked: t })
        } else {
            let witness =
                find_singular_witness(field, form, &partials).map(|q| shear_out(field, q, shift));
            Err(Error::SingularCurve { witness })
        }
    } else {
        let mut checked = 0usize;
        // scan as rational_points does, but report the first singular point
        let mut probe = |q: [u64; 3]| -> Result<()> {
            checked += 1;
            if partials.iter().all(|p| p.eval(field, q) == 0) {
                Err(Error::SingularCurve {
                    witness: Some(shear_out(field, normalize(field, q), shift)),
                })
            } else {
                Ok(())
            }
        };
        if form.eval(field, [1, 0, 0]) == 0 {
            probe([1, 0, 0])?;
        }
        let on_line = form.dehomogenize(1).swap_vars().univariate_in_v(field, 0);
        if !univar::is_zero(&on_line) {
            for x in univar::roots(field, &on_line) {
                probe([x, 1, 0])?;
            }
        }
        let affine = form.dehomogenize(2);
        let limit = 500u64.min(field.modulus());
        for x0 in 0..limit {
            let uni = affine.univariate_in_v(field, x0);
            if univar::is_zero(&uni) {
                continue;
            }
            for y in univar::roots(field, &uni) {
                probe([x0, y, 1])?;
            }
        }
        Ok(SmoothnessCertificate::Sampled {
            points_checked: checked,
        })
    }
}

fn shear_out(field: &PrimeField, q: [u64; 3], shift: [u64; 2]) -> [u64; 3] {
    [
        field.add(q[0], field.mul(shift[0], q[2])),
        field.add(q[1], field.mul(shift[1], q[2])),
        q[2],
    ]
}

fn monomials_of_degree(k: u16) -> Vec<Exponents> {
    let mut out = Vec::new();
    for a in 0..=k {
        for b in 0..=(k - a) {
            out.push([a, b, k - a - b]);
        }
    }
    out
}

/// Hunts for a rational common zero of the gradient lying on the curve.
/// Only called after the elimination certificate failed, so a singular
/// point exists over the closure; it may still be irrational, in which
/// case no witness is reported.
fn find_singular_witness(
    field: &PrimeField,
    form: &HomogeneousForm,
    partials: &[HomogeneousForm],
) -> Option<[u64; 3]> {
    let singular_at =
        |q: [u64; 3]| form.eval(field, q) == 0 && partials.iter().all(|p| p.eval(field, q) == 0);
    if singular_at([1, 0, 0]) {
        return Some([1, 0, 0]);
    }
    let limit = 2000u64.min(field.modulus());
    // line z = 0
    let on_line = form.dehomogenize(1).swap_vars().univariate_in_v(field, 0);
    if univar::is_zero(&on_line) {
        for x in 0..limit {
            if singular_at([x, 1, 0]) {
                return Some([x, 1, 0]);
            }
        }
    } else {
        for x in univar::roots(field, &on_line) {
            if singular_at([x, 1, 0]) {
                return Some([x, 1, 0]);
            }
        }
    }
    let affine = form.dehomogenize(2);
    for x0 in 0..limit {
        let uni = affine.univariate_in_v(field, x0);
        if univar::is_zero(&uni) {
            for y in 0..limit {
                if singular_at([x0, y, 1]) {
                    return Some([x0, y, 1]);
                }
            }
        } else {
            for y in univar::roots(field, &uni) {
                if singular_at([x0, y, 1]) {
                    return Some([x0, y, 1]);
                }
            }
        }
    }
    None
}
