//! Assembly of Koszul differentials as sparse matrices and computation of
//! the graded dimensions kappa_{p,q} by exact rank-nullity.
//!
//! For V = H^0(L) and W_q = H^0(B ⊗ L^q), the map
//!   delta_{p,q}: wedge^p V ⊗ W_q -> wedge^{p-1} V ⊗ W_{q+1}
//! sends v_{i_0} ∧ ... ∧ v_{i_{p-1}} ⊗ s to
//!   sum_j (-1)^j (tuple minus i_j) ⊗ (v_{i_j} · s),
//! and kappa_{p,q} = dim(wedge^p V ⊗ W_q) - rank delta_{p+1,q-1} - rank delta_{p,q}.
//! Each rank is shared by the two cells that use it.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bundle::{sections, LineBundle, SectionSpace};
use crate::comb::binom_i64;
use crate::curve::PlaneCurve;
use crate::error::{Error, Result};
use crate::sparse::{RankConfig, SparseMatrix};
use crate::wedge::WedgeBasis;

#[derive(Debug, Clone)]
pub struct BettiConfig {
    /// Largest column p; defaults to r(L).
    pub p_max: Option<usize>,
    /// Largest weight row computed.
    pub q_max: usize,
    /// Also compute the weight-one row against the canonical bundle and
    /// compare through the duality kappa_{i,1} = kappa_{r-i-1,1}(canonical).
    /// Only meaningful when B is trivial.
    pub check_duality: bool,
    pub rank: RankConfig,
}

impl Default for BettiConfig {
    fn default() -> Self {
        BettiConfig {
            p_max: None,
            q_max: 3,
            check_duality: false,
            rank: RankConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub p: usize,
    pub q: usize,
    /// Dimensions of the three graded pieces around the cell:
    /// [wedge^{p+1} ⊗ W_{q-1}, wedge^p ⊗ W_q, wedge^{p-1} ⊗ W_{q+1}].
    pub dims: [u64; 3],
    pub rank_in: u64,
    pub rank_out: u64,
    pub kappa: u64,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// None when not computed (non-trivial B or disabled).
    pub duality: Option<bool>,
    /// None when the table is truncated below the checkable range.
    pub hilbert: Option<bool>,
    pub dsquared: bool,
    /// Filled by the caller after an independent run at a second prime.
    pub two_prime: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub curve: String,
    #[serde(rename = "bundle_B")]
    pub bundle_b: String,
    #[serde(rename = "bundle_L")]
    pub bundle_l: String,
    pub prime: u64,
    pub seed: u64,
    pub cells: Vec<CellRecord>,
    pub checks: Checks,
}

impl BettiTable {
    pub fn kappa(&self, p: usize, q: usize) -> Option<u64> {
        self.cells
            .iter()
            .find(|c| c.p == p && c.q == q)
            .map(|c| c.kappa)
    }

    /// All p with kappa_{p,q} nonzero, ascending.
    pub fn nonzero_in_weight(&self, q: usize) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c.q == q && c.kappa != 0)
            .map(|c| c.p)
            .collect()
    }

    /// Map (p, q) -> kappa, for table comparisons.
    pub fn kappa_map(&self) -> HashMap<(usize, usize), u64> {
        self.cells.iter().map(|c| ((c.p, c.q), c.kappa)).collect()
    }

    /// True when both tables report identical kappa at every shared cell
    /// and cover the same cell set.
    pub fn agrees_with(&self, other: &BettiTable) -> bool {
        self.kappa_map() == other.kappa_map()
    }
}

/// Graded pieces and expressed products for one strand (B, L).
struct Strand<'a> {
    curve: &'a PlaneCurve,
    n: usize, // h^0(L)
    l_basis: Vec<crate::poly::HomogeneousForm>,
    b: LineBundle,
    l: LineBundle,
    spaces: HashMap<i64, Option<SectionSpace>>,
}

impl<'a> Strand<'a> {
    fn new(curve: &'a PlaneCurve, b: &LineBundle, l: &LineBundle) -> Result<Self> {
        let l_space = sections(curve, l)?;
        let n = l_space.dim();
        if n == 0 {
            return Err(Error::ConsistencyCheck(
                "L has no global sections; no Koszul complex".into(),
            ));
        }
        Ok(Strand {
            curve,
            n,
            l_basis: l_space.basis().to_vec(),
            b: b.clone(),
            l: l.clone(),
            spaces: HashMap::new(),
        })
    }

    fn space(&mut self, q: i64) -> Result<&Option<SectionSpace>> {
        if !self.spaces.contains_key(&q) {
            let bundle = self.b.tensor_power(self.curve, &self.l, q)?;
            let space = match bundle {
                None => None,
                Some(bd) => Some(sections(self.curve, &bd)?),
            };
            self.spaces.insert(q, space);
        }
        Ok(&self.spaces[&q])
    }

    fn dim_w(&mut self, q: i64) -> Result<usize> {
        Ok(self.space(q)?.as_ref().map_or(0, |s| s.dim()))
    }

    /// Coordinates of v_i · s_k in the basis of W_{q+1}, for all i, k.
    fn products(&mut self, q: i64) -> Result<Vec<Vec<Vec<(u32, u64)>>>> {
        let wq = self.dim_w(q)?;
        self.space(q + 1)?;
        if wq == 0 {
            return Ok(vec![Vec::new(); self.n]);
        }
        let curve = self.curve;
        let src = self.spaces[&q].as_ref().unwrap().basis().to_vec();
        let dst = self.spaces[&(q + 1)]
            .as_ref()
            .ok_or_else(|| {
                Error::ConsistencyCheck("nonzero sections multiply into an empty space".into())
            })?
            .clone();
        let mut out = Vec::with_capacity(self.n);
        for v in &self.l_basis {
            let mut per_section = Vec::with_capacity(src.len());
            for s in &src {
                let prod = crate::bundle::multiply(curve, v, s);
                let coords = dst.express(curve, &prod).map_err(|_| {
                    Error::ConsistencyCheck(
                        "section product not expressible in the target basis".into(),
                    )
                })?;
                let sparse: Vec<(u32, u64)> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c != 0)
                    .map(|(m, c)| (m as u32, c))
                    .collect();
                per_section.push(sparse);
            }
            out.push(per_section);
        }
        Ok(out)
    }

    /// Matrix of delta_{p,q} in the wedge ⊗ echelon bases.
    fn matrix(&mut self, p: usize, q: i64) -> Result<SparseMatrix> {
        let field = *self.curve.field();
        let wq = self.dim_w(q)?;
        let wq1 = self.dim_w(q + 1)?;
        let dom = WedgeBasis::new(self.n, p);
        if p == 0 || p > self.n {
            return Ok(SparseMatrix::zero(0, dom.dim() * wq));
        }
        let cod = WedgeBasis::new(self.n, p - 1);
        let rows = cod.dim() * wq1;
        let cols = dom.dim() * wq;
        if wq == 0 || wq1 == 0 {
            return Ok(SparseMatrix::zero(rows, cols));
        }
        let products = self.products(q)?;
        let mut triplets = Vec::new();
        let mut removed = vec![0u32; p - 1];
        for (t, tuple) in dom.tuples().enumerate() {
            for (j, &i) in tuple.iter().enumerate() {
                removed.clear();
                removed.extend(tuple.iter().enumerate().filter(|&(jj, _)| jj != j).map(|(_, &x)| x));
                let t2 = cod.rank_of(&removed) as u32;
                let negate = j % 2 == 1;
                for k in 0..wq {
                    let col = (t * wq + k) as u32;
                    for &(m, c) in &products[i as usize][k] {
                        let v = if negate { field.neg(c) } else { c };
                        triplets.push((t2 * wq1 as u32 + m, col, v));
                    }
                }
            }
        }
        SparseMatrix::from_triplets(&field, rows, cols, triplets)
    }
}

/// The matrix of delta_{p,q} for the strand (B, L), standalone.
pub fn koszul_differential(
    curve: &PlaneCurve,
    b: &LineBundle,
    l: &LineBundle,
    p: usize,
    q: i64,
) -> Result<SparseMatrix> {
    Strand::new(curve, b, l)?.matrix(p, q)
}

/// kappa_{p,q}(C, B; L) alone, without table bookkeeping.
pub fn koszul_dim(
    curve: &PlaneCurve,
    b: &LineBundle,
    l: &LineBundle,
    p: usize,
    q: i64,
    rank_cfg: &RankConfig,
) -> Result<u64> {
    let mut strand = Strand::new(curve, b, l)?;
    let field = *curve.field();
    let middle = binom_i64(strand.n as i64, p as i64) * strand.dim_w(q)? as u64;
    if middle == 0 {
        return Ok(0);
    }
    let rank_out = strand.matrix(p, q)?.rank(&field, rank_cfg).rank as u64;
    let rank_in = strand.matrix(p + 1, q - 1)?.rank(&field, rank_cfg).rank as u64;
    middle
        .checked_sub(rank_in + rank_out)
        .ok_or_else(|| Error::ConsistencyCheck(format!("negative kappa at ({p},{q})")))
}

fn bundle_label(b: &LineBundle) -> String {
    let mut s = format!("O({})", b.twist());
    if !b.minus_divisor().is_empty() {
        s.push_str("(-");
        let mut first = true;
        for (pt, m) in b.minus_divisor().iter() {
            if !first {
                s.push_str(" - ");
            }
            first = false;
            let [a, bb, c] = pt.input_coords;
            if m == 1 {
                s.push_str(&format!("[{a}:{bb}:{c}]"));
            } else {
                s.push_str(&format!("{m}[{a}:{bb}:{c}]"));
            }
        }
        s.push(')');
    }
    s
}

/// Full table of kappa_{p,q} for 0 <= p <= p_max, 0 <= q <= q_max, with
/// the per-table consistency checks filled in.
pub fn betti_table(
    curve: &PlaneCurve,
    b: &LineBundle,
    l: &LineBundle,
    cfg: &BettiConfig,
) -> Result<BettiTable> {
    let field = *curve.field();
    let mut strand = Strand::new(curve, b, l)?;
    let n = strand.n;
    let r = n - 1;
    let p_max = cfg.p_max.unwrap_or(r).min(r);
    let q_max = cfg.q_max as i64;
    let a_max = (p_max + 1).min(n);

    // ranks and timings per differential, built layer by layer so that at
    // most two layers of matrices are alive at once
    let mut rank_of: HashMap<(usize, i64), (u64, u64)> = HashMap::new();
    let mut dsquared = true;
    let mut prev_layer: Option<HashMap<usize, SparseMatrix>> = None;
    for qq in -1..=q_max {
        let mut layer: HashMap<usize, SparseMatrix> = HashMap::new();
        for a in 1..=a_max {
            let m = strand.matrix(a, qq)?;
            layer.insert(a, m);
        }
        if let Some(prev) = &prev_layer {
            for a in 2..=a_max {
                let (first, second) = (&prev[&a], &layer[&(a - 1)]);
                if second.cols() == first.rows() {
                    if !second.multiply(&field, first)?.is_zero() {
                        dsquared = false;
                    }
                }
            }
        }
        let computed: Vec<((usize, i64), (u64, u64))> = layer
            .par_iter()
            .map(|(&a, m)| {
                let start = Instant::now();
                let rank = m.rank(&field, &cfg.rank).rank as u64;
                let ms = start.elapsed().as_millis() as u64;
                ((a, qq), (rank, ms))
            })
            .collect();
        rank_of.extend(computed);
        prev_layer = Some(layer);
    }

    let mut cells = Vec::new();
    for p in 0..=p_max {
        for q in 0..=q_max {
            let wqm1 = strand.dim_w(q - 1)? as u64;
            let wq = strand.dim_w(q)? as u64;
            let wq1 = strand.dim_w(q + 1)? as u64;
            let dims = [
                binom_i64(n as i64, p as i64 + 1) * wqm1,
                binom_i64(n as i64, p as i64) * wq,
                binom_i64(n as i64, p as i64 - 1) * wq1,
            ];
            let (rank_in, ms_in) = rank_of.get(&(p + 1, q - 1)).copied().unwrap_or((0, 0));
            let (rank_out, ms_out) = rank_of.get(&(p, q)).copied().unwrap_or((0, 0));
            let kappa = dims[1].checked_sub(rank_in + rank_out).ok_or_else(|| {
                Error::ConsistencyCheck(format!("negative kappa at ({p},{q})"))
            })?;
            cells.push(CellRecord {
                p,
                q: q as usize,
                dims,
                rank_in,
                rank_out,
                kappa,
                millis: ms_in + ms_out,
            });
        }
    }

    let hilbert = if p_max == r && q_max >= 2 {
        Some(hilbert_identity(&mut strand, r, &cells)?)
    } else {
        None
    };

    let duality = if cfg.check_duality && b.is_pure_twist() && b.twist() == 0 {
        Some(duality_agrees(curve, l, &cells, r, p_max, cfg)?)
    } else {
        None
    };

    Ok(BettiTable {
        curve: format!("{}", curve.input_form()),
        bundle_b: bundle_label(b),
        bundle_l: bundle_label(l),
        prime: field.modulus(),
        seed: cfg.rank.seed,
        cells,
        checks: Checks {
            duality,
            hilbert,
            dsquared,
            two_prime: None,
        },
    })
}

/// Alternating Betti sums must reproduce the dimensions of the graded
/// module: h^0(B ⊗ L^m) = sum (-1)^p kappa_{p,q} C(r + m - p - q, r).
fn hilbert_identity(strand: &mut Strand<'_>, r: usize, cells: &[CellRecord]) -> Result<bool> {
    for m in 0..=4i64 {
        let lhs = strand.dim_w(m)? as i64;
        let mut rhs = 0i64;
        for c in cells {
            let coeff = binom_i64(r as i64 + m - c.p as i64 - c.q as i64, r as i64) as i64;
            let term = c.kappa as i64 * coeff;
            rhs += if c.p % 2 == 0 { term } else { -term };
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// kappa_{i,1}(C; L) = kappa_{r-i-1,1}(C, canonical; L) for nonspecial L,
/// with the right side computed from scratch.
fn duality_agrees(
    curve: &PlaneCurve,
    l: &LineBundle,
    cells: &[CellRecord],
    r: usize,
    p_max: usize,
    cfg: &BettiConfig,
) -> Result<bool> {
    if crate::bundle::h1(curve, l)? != 0 {
        return Ok(true); // duality route only claimed for nonspecial L
    }
    let omega = LineBundle::canonical(curve);
    let dual_cfg = BettiConfig {
        p_max: None,
        q_max: 1,
        check_duality: false,
        rank: cfg.rank,
    };
    let dual = betti_table(curve, &omega, l, &dual_cfg)?;
    for c in cells.iter().filter(|c| c.q == 1 && c.p <= p_max) {
        let mirror = r as i64 - c.p as i64 - 1;
        let expected = if mirror < 0 {
            0
        } else {
            dual.kappa(mirror as usize, 1).unwrap_or(0)
        };
        if c.kappa != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
