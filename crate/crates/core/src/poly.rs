//! Sparse trivariate homogeneous forms over GF(p).
//!
//! A form stores only nonzero coefficients, keyed by exponent triples that
//! sum to its degree. Monomials are ordered lexicographically on the
//! exponent triple (degree is fixed, so this is the graded-lex order used
//! for echelonization everywhere in the crate).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

pub type Exponents = [u16; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    degree: u16,
    coeffs: BTreeMap<Exponents, u64>,
}

impl HomogeneousForm {
    pub fn zero(degree: u16) -> Self {
        HomogeneousForm {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(field: &PrimeField, exps: Exponents, coeff: u64) -> Self {
        let degree = exps[0] + exps[1] + exps[2];
        let mut form = HomogeneousForm::zero(degree);
        let c = field.reduce(coeff);
        if c != 0 {
            form.coeffs.insert(exps, c);
        }
        form
    }

    pub fn from_coeffs(
        field: &PrimeField,
        degree: u16,
        terms: impl IntoIterator<Item = (Exponents, u64)>,
    ) -> Result<Self> {
        let mut form = HomogeneousForm::zero(degree);
        for (exps, coeff) in terms {
            if exps[0] + exps[1] + exps[2] != degree {
                return Err(Error::ExponentMismatch(exps, degree));
            }
            form.add_term(field, exps, coeff);
        }
        Ok(form)
    }

    pub fn degree(&self) -> u16 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exps: Exponents) -> u64 {
        self.coeffs.get(&exps).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, u64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Largest monomial in graded-lex order.
    pub fn leading_monomial(&self) -> Option<Exponents> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, field: &PrimeField, exps: Exponents, coeff: u64) {
        debug_assert_eq!(exps[0] + exps[1] + exps[2], self.degree);
        let c = field.reduce(coeff);
        let entry = self.coeffs.entry(exps).or_insert(0);
        *entry = field.add(*entry, c);
        if *entry == 0 {
            self.coeffs.remove(&exps);
        }
    }

    pub fn add(&self, field: &PrimeField, other: &HomogeneousForm) -> HomogeneousForm {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(field, e, c);
        }
        out
    }

    pub fn sub_scaled(
        &self,
        field: &PrimeField,
        scale: u64,
        other: &HomogeneousForm,
    ) -> HomogeneousForm {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(field, e, field.neg(field.mul(scale, c)));
        }
        out
    }

    pub fn scale(&self, field: &PrimeField, s: u64) -> HomogeneousForm {
        let s = field.reduce(s);
        let mut out = HomogeneousForm::zero(self.degree);
        if s == 0 {
            return out;
        }
        for (e, c) in self.terms() {
            out.coeffs.insert(e, field.mul(c, s));
        }
        out
    }

    pub fn mul(&self, field: &PrimeField, other: &HomogeneousForm) -> HomogeneousForm {
        let mut out = HomogeneousForm::zero(self.degree + other.degree);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(
                    field,
                    [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]],
                    field.mul(c1, c2),
                );
            }
        }
        out
    }

    pub fn eval(&self, field: &PrimeField, point: [u64; 3]) -> u64 {
        let mut acc = 0u64;
        for (e, c) in self.terms() {
            let mut t = c;
            for (var, &exp) in e.iter().enumerate() {
                t = field.mul(t, field.pow(point[var], exp as u64));
            }
            acc = field.add(acc, t);
        }
        acc
    }

    /// Formal partial derivative with respect to variable 0, 1 or 2.
    /// The result is homogeneous of degree d-1 (zero form when d = 0).
    pub fn partial(&self, field: &PrimeField, var: usize) -> HomogeneousForm {
        let degree = self.degree.saturating_sub(1);
        let mut out = HomogeneousForm::zero(degree);
        for (e, c) in self.terms() {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e;
            e2[var] -= 1;
            out.add_term(field, e2, field.mul(c, field.reduce(e[var] as u64)));
        }
        out
    }

    /// Substitution x_i -> sum_j m[i][j] x_j (matrix acts on the variables).
    pub fn substitute_linear(&self, field: &PrimeField, m: &[[u64; 3]; 3]) -> HomogeneousForm {
        let vars: Vec<HomogeneousForm> = (0..3)
            .map(|i| {
                let mut v = HomogeneousForm::zero(1);
                for j in 0..3 {
                    let mut e = [0u16; 3];
                    e[j] = 1;
                    v.add_term(field, e, m[i][j]);
                }
                v
            })
            .collect();
        let mut out = HomogeneousForm::zero(self.degree);
        for (e, c) in self.terms() {
            let mut term = HomogeneousForm::monomial(field, [0, 0, 0], c);
            for (var, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term = term.mul(field, &vars[var]);
                }
            }
            for (te, tc) in term.terms() {
                out.add_term(field, te, tc);
            }
        }
        out
    }

    /// Dehomogenize by setting the given variable to 1; the two remaining
    /// variables keep their relative order.
    pub fn dehomogenize(&self, chart_var: usize) -> BivariatePoly {
        let mut coeffs = BTreeMap::new();
        let (u, v) = other_vars(chart_var);
        for (e, c) in self.terms() {
            coeffs.insert([e[u], e[v]], c);
        }
        BivariatePoly { coeffs }
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z"];
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &exp) in e.iter().enumerate() {
                if exp == 1 {
                    write!(f, "*{}", names[i])?;
                } else if exp > 1 {
                    write!(f, "*{}^{}", names[i], exp)?;
                }
            }
        }
        Ok(())
    }
}

pub fn other_vars(chart_var: usize) -> (usize, usize) {
    match chart_var {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("chart variable out of range"),
    }
}

/// Dehomogenized (affine) polynomial in two variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    coeffs: BTreeMap<[u16; 2], u64>,
}

impl BivariatePoly {
    pub fn terms(&self) -> impl Iterator<Item = ([u16; 2], u64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn eval(&self, field: &PrimeField, u: u64, v: u64) -> u64 {
        let mut acc = 0u64;
        for (e, c) in self.terms() {
            let t = field.mul(
                c,
                field.mul(field.pow(u, e[0] as u64), field.pow(v, e[1] as u64)),
            );
            acc = field.add(acc, t);
        }
        acc
    }

    pub fn swap_vars(&self) -> BivariatePoly {
        let coeffs = self.coeffs.iter().map(|(&e, &c)| ([e[1], e[0]], c)).collect();
        BivariatePoly { coeffs }
    }

    /// Coefficients of the polynomial viewed in its second variable, i.e.
    /// p(u0, v) as a univariate polynomial in v (low-to-high).
    pub fn univariate_in_v(&self, field: &PrimeField, u0: u64) -> Vec<u64> {
        let max_v = self.coeffs.keys().map(|e| e[1]).max().unwrap_or(0) as usize;
        let mut out = vec![0u64; max_v + 1];
        for (e, c) in self.terms() {
            let t = field.mul(c, field.pow(u0, e[0] as u64));
            out[e[1] as usize] = field.add(out[e[1] as usize], t);
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }

    /// Evaluates on a pair of truncated power series, returning the first
    /// `prec` coefficients of the composite series.
    pub fn eval_series(
        &self,
        field: &PrimeField,
        u_series: &[u64],
        v_series: &[u64],
        prec: usize,
    ) -> Vec<u64> {
        let mut acc = vec![0u64; prec];
        // cache powers, exponents are small
        let max_u = self.coeffs.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
        let max_v = self.coeffs.keys().map(|e| e[1]).max().unwrap_or(0) as usize;
        let u_pows = series_powers(field, u_series, max_u, prec);
        let v_pows = series_powers(field, v_series, max_v, prec);
        for (e, c) in self.terms() {
            let prod = series_mul(field, &u_pows[e[0] as usize], &v_pows[e[1] as usize], prec);
            for (i, &t) in prod.iter().enumerate() {
                acc[i] = field.add(acc[i], field.mul(c, t));
            }
        }
        acc
    }
}

pub fn series_mul(field: &PrimeField, a: &[u64], b: &[u64], prec: usize) -> Vec<u64> {
    let mut out = vec![0u64; prec];
    for (i, &ai) in a.iter().enumerate().take(prec) {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(prec - i) {
            out[i + j] = field.add(out[i + j], field.mul(ai, bj));
        }
    }
    out
}

fn series_powers(field: &PrimeField, s: &[u64], max_pow: usize, prec: usize) -> Vec<Vec<u64>> {
    let mut pows = Vec::with_capacity(max_pow + 1);
    let mut one = vec![0u64; prec];
    if prec > 0 {
        one[0] = 1;
    }
    pows.push(one);
    for k in 1..=max_pow {
        let next = series_mul(field, &pows[k - 1], s, prec);
        pows.push(next);
    }
    pows
}
