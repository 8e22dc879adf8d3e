//! Line-oriented curve/bundle input files.
//!
//! ```text
//! prime 2147483647
//! degree 4
//! 4 0 0  1        # one line per monomial: e1 e2 e3 coeff
//! 0 4 0  1
//! 0 0 4  1
//! point 1 0 0     # optional pinned points
//! bundle L twist 2
//! minus 1 0 0 1   # optional divisor points with multiplicity
//! ```
//!
//! Coefficients and point coordinates are integers (negatives allowed) and
//! are reduced into whatever prime field the file is built over, so the
//! same file can be instantiated at a second prime for cross-checking.

use std::collections::BTreeMap;

use crate::bundle::{Divisor, LineBundle};
use crate::curve::{CurvePoint, PlaneCurve};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::HomogeneousForm;

/// A bundle declaration before field reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSpec {
    pub name: String,
    pub twist: i64,
    /// Divisor points as raw integer coordinates with multiplicities.
    pub minus: Vec<([i64; 3], usize)>,
}

/// A parsed input file, still over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveInput {
    pub prime: Option<u64>,
    pub degree: u16,
    pub monomials: Vec<([u16; 3], i64)>,
    pub points: Vec<[i64; 3]>,
    pub bundles: Vec<BundleSpec>,
}

/// An input instantiated over a concrete prime field.
#[derive(Debug)]
pub struct BuiltInput {
    pub field: PrimeField,
    pub curve: PlaneCurve,
    pub points: Vec<CurvePoint>,
    pub bundles: Vec<(String, LineBundle)>,
}

impl CurveInput {
    pub fn parse(text: &str) -> Result<CurveInput> {
        let mut prime = None;
        let mut degree: Option<u16> = None;
        let mut monomials = Vec::new();
        let mut points = Vec::new();
        let mut bundles: Vec<BundleSpec> = Vec::new();
        let bad = |line: usize, msg: String| Error::InputParse { line, msg };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens[0] {
                "prime" => {
                    let [_, v] = tokens[..] else {
                        return Err(bad(line, "expected `prime <p>`".into()));
                    };
                    let p = v
                        .parse::<u64>()
                        .map_err(|e| bad(line, format!("bad prime `{v}`: {e}")))?;
                    if prime.replace(p).is_some() {
                        return Err(bad(line, "duplicate `prime` line".into()));
                    }
                }
                "degree" => {
                    let [_, v] = tokens[..] else {
                        return Err(bad(line, "expected `degree <d>`".into()));
                    };
                    let d = v
                        .parse::<u16>()
                        .map_err(|e| bad(line, format!("bad degree `{v}`: {e}")))?;
                    if degree.replace(d).is_some() {
                        return Err(bad(line, "duplicate `degree` line".into()));
                    }
                }
                "point" => {
                    let coords = parse_triple(&tokens[1..], line, "point a b c")?;
                    points.push(coords);
                }
                "bundle" => {
                    let [_, name, kw, v] = tokens[..] else {
                        return Err(bad(line, "expected `bundle <name> twist <k>`".into()));
                    };
                    if kw != "twist" {
                        return Err(bad(line, format!("expected `twist`, found `{kw}`")));
                    }
                    let k = v
                        .parse::<i64>()
                        .map_err(|e| bad(line, format!("bad twist `{v}`: {e}")))?;
                    if bundles.iter().any(|b| b.name == name) {
                        return Err(bad(line, format!("duplicate bundle `{name}`")));
                    }
                    bundles.push(BundleSpec {
                        name: name.to_string(),
                        twist: k,
                        minus: Vec::new(),
                    });
                }
                "minus" => {
                    let Some(bundle) = bundles.last_mut() else {
                        return Err(bad(line, "`minus` before any `bundle` line".into()));
                    };
                    if tokens.len() != 5 {
                        return Err(bad(line, "expected `minus a b c mult`".into()));
                    }
                    let coords = parse_triple(&tokens[1..4], line, "minus a b c mult")?;
                    let mult = tokens[4]
                        .parse::<usize>()
                        .map_err(|e| bad(line, format!("bad multiplicity `{}`: {e}", tokens[4])))?;
                    if mult == 0 {
                        return Err(bad(line, "multiplicity must be positive".into()));
                    }
                    bundle.minus.push((coords, mult));
                }
                _ => {
                    // a monomial line: e1 e2 e3 coeff
                    if tokens.len() != 4 {
                        return Err(bad(
                            line,
                            format!("unrecognized directive `{}`", tokens[0]),
                        ));
                    }
                    let Some(d) = degree else {
                        return Err(bad(line, "monomial line before `degree`".into()));
                    };
                    let mut e = [0u16; 3];
                    for (slot, tok) in e.iter_mut().zip(&tokens[..3]) {
                        *slot = tok
                            .parse::<u16>()
                            .map_err(|err| bad(line, format!("bad exponent `{tok}`: {err}")))?;
                    }
                    if e[0] as u32 + e[1] as u32 + e[2] as u32 != d as u32 {
                        return Err(bad(
                            line,
                            format!("exponents {e:?} do not sum to degree {d}"),
                        ));
                    }
                    let c = tokens[3]
                        .parse::<i64>()
                        .map_err(|err| bad(line, format!("bad coefficient `{}`: {err}", tokens[3])))?;
                    monomials.push((e, c));
                }
            }
        }
        let degree = degree.ok_or_else(|| Error::InputParse {
            line: 0,
            msg: "missing `degree` line".into(),
        })?;
        if monomials.is_empty() {
            return Err(Error::InputParse {
                line: 0,
                msg: "no monomial lines".into(),
            });
        }
        Ok(CurveInput {
            prime,
            degree,
            monomials,
            points,
            bundles,
        })
    }

    /// Instantiates the integer data over a prime field. A prime passed
    /// here takes precedence over the file's `prime` line.
    pub fn build(&self, prime_override: Option<u64>) -> Result<BuiltInput> {
        let p = prime_override.or(self.prime).ok_or_else(|| Error::InputParse {
            line: 0,
            msg: "no prime: add a `prime` line or pass --prime".into(),
        })?;
        let field = PrimeField::new(p)?;
        // accumulate over the integers first so repeated monomials merge
        let mut coeffs: BTreeMap<[u16; 3], i64> = BTreeMap::new();
        for &(e, c) in &self.monomials {
            *coeffs.entry(e).or_insert(0) += c;
        }
        let mut form = HomogeneousForm::zero(self.degree);
        for (e, c) in coeffs {
            let r = field.reduce_i64(c);
            if r != 0 {
                form.add_term(&field, e, r);
            }
        }
        let curve = PlaneCurve::new(field, form)?;
        let points = self
            .points
            .iter()
            .map(|&raw| curve.point(reduce_triple(&field, raw)))
            .collect::<Result<Vec<_>>>()?;
        let bundles = self
            .bundles
            .iter()
            .map(|spec| {
                let mut minus = Divisor::empty();
                for &(raw, mult) in &spec.minus {
                    minus.add(curve.point(reduce_triple(&field, raw))?, mult);
                }
                Ok((spec.name.clone(), LineBundle::new(&curve, spec.twist, minus)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BuiltInput {
            field,
            curve,
            points,
            bundles,
        })
    }

    /// Rebuilds over a second prime for cross-checking. Divisor and pinned
    /// points are remapped by scan ordinal: a point that is the k-th
    /// rational point of the primary curve becomes the k-th rational point
    /// of the rebuilt curve, since the file's integer coordinates need not
    /// lie on the curve modulo a different prime.
    pub fn rebuild_at(&self, prime: u64, primary: &BuiltInput) -> Result<BuiltInput> {
        let stripped = CurveInput {
            prime: self.prime,
            degree: self.degree,
            monomials: self.monomials.clone(),
            points: Vec::new(),
            bundles: Vec::new(),
        };
        let built = stripped.build(Some(prime))?;
        let remap = |point: &CurvePoint| -> Result<CurvePoint> {
            let k = scan_ordinal(&primary.curve, point).ok_or_else(|| {
                Error::NotRepresentable(
                    "pinned point outside the scan range; cannot remap to a second prime".into(),
                )
            })?;
            let scanned = built.curve.rational_points(k + 1);
            scanned.get(k).copied().ok_or_else(|| {
                Error::NotRepresentable(format!(
                    "rebuilt curve has fewer than {} rational points in scan range",
                    k + 1
                ))
            })
        };
        let points = primary
            .points
            .iter()
            .map(&remap)
            .collect::<Result<Vec<_>>>()?;
        let bundles = primary
            .bundles
            .iter()
            .map(|(name, bundle)| {
                let mut minus = Divisor::empty();
                for (pt, mult) in bundle.minus_divisor().iter() {
                    minus.add(remap(pt)?, mult);
                }
                Ok((
                    name.clone(),
                    LineBundle::new(&built.curve, bundle.twist(), minus)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BuiltInput {
            field: built.field,
            curve: built.curve,
            points,
            bundles,
        })
    }
}

impl BuiltInput {
    pub fn bundle(&self, name: &str) -> Result<&LineBundle> {
        self.bundles
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| b)
            .ok_or_else(|| Error::UnknownBundle(name.to_string()))
    }
}

/// Position of a point in the deterministic rational-point scan.
pub fn scan_ordinal(curve: &PlaneCurve, point: &CurvePoint) -> Option<usize> {
    const ORDINAL_SCAN: usize = 1024;
    curve
        .rational_points(ORDINAL_SCAN)
        .iter()
        .position(|p| p == point)
}

fn parse_triple(tokens: &[&str], line: usize, shape: &str) -> Result<[i64; 3]> {
    if tokens.len() < 3 {
        return Err(Error::InputParse {
            line,
            msg: format!("expected `{shape}`"),
        });
    }
    let mut out = [0i64; 3];
    for (slot, tok) in out.iter_mut().zip(tokens) {
        *slot = tok.parse::<i64>().map_err(|e| Error::InputParse {
            line,
            msg: format!("bad coordinate `{tok}`: {e}"),
        })?;
    }
    Ok(out)
}

fn reduce_triple(field: &PrimeField, raw: [i64; 3]) -> [u64; 3] {
    [
        field.reduce_i64(raw[0]),
        field.reduce_i64(raw[1]),
        field.reduce_i64(raw[2]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUARTIC: &str = "\
# Fermat quartic with a punctured square twist
prime 2147483647
degree 4
4 0 0  1
0 4 0  1
0 0 4  1
bundle B twist 0
bundle L twist 2
";

    #[test]
    fn parses_and_builds_the_quartic() {
        let input = CurveInput::parse(QUARTIC).unwrap();
        assert_eq!(input.prime, Some(2147483647));
        assert_eq!(input.degree, 4);
        assert_eq!(input.monomials.len(), 3);
        let built = input.build(None).unwrap();
        assert_eq!(built.curve.genus(), 3);
        assert_eq!(built.bundle("L").unwrap().twist(), 2);
        assert_eq!(built.bundle("B").unwrap().twist(), 0);
        assert!(matches!(built.bundle("M"), Err(Error::UnknownBundle(_))));
    }

    #[test]
    fn negative_coefficients_reduce_into_the_field() {
        let text = "degree 3\n3 0 0 1\n0 3 0 -1\n0 0 3 2\n";
        let input = CurveInput::parse(text).unwrap();
        let built = input.build(Some(2147483647)).unwrap();
        assert_eq!(built.curve.genus(), 1);
        let f = built.field;
        assert_eq!(
            built.curve.input_form().coeff([0, 3, 0]),
            f.reduce_i64(-1)
        );
    }

    #[test]
    fn repeated_monomial_lines_accumulate() {
        let text = "degree 3\n3 0 0 1\n3 0 0 1\n0 3 0 1\n0 0 3 1\n";
        let input = CurveInput::parse(text).unwrap();
        let built = input.build(Some(2147483647)).unwrap();
        assert_eq!(built.curve.input_form().coeff([3, 0, 0]), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("prime x\n", 1),
            ("degree 4\n4 0 0\n", 2),             // short monomial line
            ("degree 4\n1 1 1 5\n", 2),           // exponents sum to 3, not 4
            ("degree 4\n4 0 0 1\nminus 1 0 0 1\n", 3), // minus before bundle
            ("degree 4\nbundle L twist x\n", 2),
            ("prime 7\nprime 7\n", 2),
        ];
        for (text, want) in cases {
            match CurveInput::parse(text) {
                Err(Error::InputParse { line, .. }) => {
                    assert_eq!(line, want, "wrong line for {text:?}")
                }
                other => panic!("expected a parse error for {text:?}, got {other:?}"),
            }
        }
        assert!(matches!(
            CurveInput::parse("prime 7\n"),
            Err(Error::InputParse { line: 0, .. })
        ));
    }

    #[test]
    fn pinned_and_divisor_points_are_validated() {
        let mut text = String::from(QUARTIC);
        text.push_str("bundle M twist 2\nminus 0 1 1 1\n"); // not on x^4+y^4+z^4
        let input = CurveInput::parse(&text).unwrap();
        assert!(matches!(
            input.build(None),
            Err(Error::PointNotOnCurve(..))
        ));
    }

    #[test]
    fn prime_override_wins_and_rebuild_remaps_points() {
        let input = CurveInput::parse(QUARTIC).unwrap();
        let primary = input.build(None).unwrap();
        // pin the third scanned point onto a bundle
        let pts = primary.curve.rational_points(3);
        let mut with_divisor = input.clone();
        with_divisor.bundles[1].minus.push((
            [
                pts[2].input_coords[0] as i64,
                pts[2].input_coords[1] as i64,
                pts[2].input_coords[2] as i64,
            ],
            1,
        ));
        let primary = with_divisor.build(None).unwrap();
        let second = crate::field::next_prime_at_least(1 << 30);
        let rebuilt = with_divisor.rebuild_at(second, &primary).unwrap();
        assert_eq!(rebuilt.field.modulus(), second);
        assert_eq!(rebuilt.curve.genus(), 3);
        let l2 = rebuilt.bundle("L").unwrap();
        assert_eq!(l2.minus_divisor().degree(), 1);
        // the remapped point is the third scanned point of the new curve
        let expect = rebuilt.curve.rational_points(3)[2];
        let (pt, mult) = l2.minus_divisor().iter().next().unwrap();
        assert_eq!((*pt, mult), (expect, 1));
    }
}
