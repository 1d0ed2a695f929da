//! Separability functionals built from GSIC sets.
//!
//! For two GSIC sets `{P_j}`, `{Q_j}` with a common purity `a`, every separable
//! two-qudit state satisfies
//!
//! ```text
//! J_a(ρ) = Σ_j Tr((P_j ⊗ Q_j) ρ) ≤ (a d² + 1) / (d (d + 1)),
//! ```
//!
//! and for `N` sets with purities `a_i`, every fully separable state satisfies
//! `J(ρ) = Σ_j Tr((⊗_i P_j^(i)) ρ) ≤ (1/N) Σ_i (a_i d² + 1)/(d(d+1))`.
//! Exceeding the bound certifies entanglement; staying below it says nothing.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::gsic::{conjugate_gsic, GsicSet};
use crate::matrix::ComplexMatrix;
use crate::operator_basis::GellMannBasis;
use crate::states::{self, DensityMatrix};
use crate::{invalid, tol, Error, Result};

/// Outcome of a one-sided entanglement test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    EntangledDetected,
    Inconclusive,
}

impl Verdict {
    pub fn from_margin(margin: f64) -> Self {
        if margin > tol::DECISION {
            Verdict::EntangledDetected
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::EntangledDetected => "ENTANGLED_DETECTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// A scalar parameter shared by all parties, or one value per party.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PartyParam {
    Shared(f64),
    PerParty(Vec<f64>),
}

impl PartyParam {
    fn collapse(values: Vec<f64>) -> Self {
        match values.split_first() {
            Some((first, rest)) if rest.iter().all(|v| v == first) => PartyParam::Shared(*first),
            _ => PartyParam::PerParty(values),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub state_label: String,
    pub d: usize,
    #[serde(rename = "N")]
    pub parties: usize,
    pub t: PartyParam,
    pub a: PartyParam,
    pub j_value: f64,
    pub bound: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

impl DetectionReport {
    fn new(d: usize, sets: &[&GsicSet], j_value: f64, bound: f64) -> Self {
        let margin = j_value - bound;
        Self {
            state_label: String::new(),
            d,
            parties: sets.len(),
            t: PartyParam::collapse(sets.iter().map(|g| g.t()).collect()),
            a: PartyParam::collapse(sets.iter().map(|g| g.a()).collect()),
            j_value,
            bound,
            margin,
            verdict: Verdict::from_margin(margin),
        }
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.state_label = label.into();
        self
    }

    pub fn detected(&self) -> bool {
        self.verdict == Verdict::EntangledDetected
    }
}

fn real_part(z: Complex64, what: &str) -> Result<f64> {
    if z.im.abs() > tol::IMAG_RESIDUE {
        return Err(Error::NumericIntegrity(format!("{what} has imaginary residue {:e}", z.im)));
    }
    Ok(z.re)
}

/// `Tr((⊗_i ops[i]) ρ)` by contracting the product entrywise, without
/// materialising the Kronecker product.
fn product_expectation(ops: &[&ComplexMatrix], rho: &ComplexMatrix, d: usize) -> Complex64 {
    let n = rho.dim();
    let parties = ops.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..n {
        for c in 0..n {
            let rho_cr = rho[(c, r)];
            if rho_cr.norm_sqr() == 0.0 {
                continue;
            }
            let (mut rr, mut cc) = (r, c);
            let mut prod = Complex64::new(1.0, 0.0);
            for op in ops.iter().rev() {
                prod *= op[(rr % d, cc % d)];
                rr /= d;
                cc /= d;
            }
            acc += prod * rho_cr;
        }
    }
    debug_assert_eq!(d.pow(parties as u32), n);
    acc
}

fn check_sets(rho: &DensityMatrix, sets: &[&GsicSet]) -> Result<()> {
    if sets.len() != rho.parties() {
        return invalid(format!("{} GSIC sets supplied for a {}-party state", sets.len(), rho.parties()));
    }
    if let Some(g) = sets.iter().find(|g| g.d() != rho.local_dim()) {
        return invalid(format!("GSIC set has d = {} but the state has local dimension {}", g.d(), rho.local_dim()));
    }
    Ok(())
}

/// `Σ_j Tr((P_j ⊗ Q_j) ρ)` for a two-qudit state; `P` and `Q` must share `a`.
pub fn j_bipartite(rho: &DensityMatrix, p: &GsicSet, q: &GsicSet) -> Result<f64> {
    if rho.parties() != 2 {
        return invalid(format!("bipartite functional needs a two-party state, got {}", rho.parties()));
    }
    check_sets(rho, &[p, q])?;
    if (p.a() - q.a()).abs() > tol::SAME_A {
        return invalid(format!("paired GSIC sets must share a: {} vs {}", p.a(), q.a()));
    }
    let d = rho.local_dim();
    let total: Complex64 = p
        .operators()
        .iter()
        .zip(q.operators())
        .map(|(pj, qj)| product_expectation(&[pj, qj], rho.matrix(), d))
        .sum();
    real_part(total, "J_a")
}

fn check_a(d: usize, a: f64) -> Result<()> {
    let df = d as f64;
    let lower = 1.0 / df.powi(3);
    let upper = 1.0 / (df * df);
    if !(a > lower && a <= upper + tol::EXACT) {
        return invalid(format!("a = {a} outside (1/d³, 1/d²] = ({lower}, {upper}] for d = {d}"));
    }
    Ok(())
}

/// Separable bound `(a d² + 1)/(d(d+1))`.
pub fn bipartite_bound(d: usize, a: f64) -> Result<f64> {
    if d < 2 {
        return invalid(format!("d must be at least 2, got {d}"));
    }
    check_a(d, a)?;
    let df = d as f64;
    Ok((a * df * df + 1.0) / (df * (df + 1.0)))
}

/// Evaluates `J_a` against its bound.
pub fn detect_bipartite(rho: &DensityMatrix, p: &GsicSet, q: &GsicSet) -> Result<DetectionReport> {
    let j = j_bipartite(rho, p, q)?;
    let bound = bipartite_bound(rho.local_dim(), p.a())?;
    Ok(DetectionReport::new(rho.local_dim(), &[p, q], j, bound))
}

/// `Σ_j Tr((⊗_i P_j^(i)) ρ)` for an `N`-party state, one set per party.
pub fn j_multipartite(rho: &DensityMatrix, sets: &[GsicSet]) -> Result<f64> {
    if rho.parties() < 2 {
        return invalid("multipartite functional needs at least two parties");
    }
    let refs: Vec<&GsicSet> = sets.iter().collect();
    check_sets(rho, &refs)?;
    let d = rho.local_dim();
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..d * d {
        let ops: Vec<&ComplexMatrix> = sets.iter().map(|g| &g.operators()[j]).collect();
        total += product_expectation(&ops, rho.matrix(), d);
    }
    real_part(total, "J")
}

/// `(1/N) Σ_i (a_i d² + 1)/(d(d+1))`.
pub fn multipartite_bound(d: usize, a_list: &[f64]) -> Result<f64> {
    if a_list.is_empty() {
        return invalid("multipartite bound needs at least one purity value");
    }
    let terms = a_list.iter().map(|&a| bipartite_bound(d, a)).collect::<Result<Vec<_>>>()?;
    Ok(terms.iter().sum::<f64>() / a_list.len() as f64)
}

/// Evaluates `J` against the fully-separable bound.
pub fn detect_multipartite(rho: &DensityMatrix, sets: &[GsicSet]) -> Result<DetectionReport> {
    let j = j_multipartite(rho, sets)?;
    let a_list: Vec<f64> = sets.iter().map(GsicSet::a).collect();
    let bound = multipartite_bound(rho.local_dim(), &a_list)?;
    let refs: Vec<&GsicSet> = sets.iter().collect();
    Ok(DetectionReport::new(rho.local_dim(), &refs, j, bound))
}

/// `T_jk = Tr(ρ (F_j ⊗ F_k))`, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationMatrix {
    pub d: usize,
    pub entries: Vec<f64>,
}

impl CorrelationMatrix {
    pub fn size(&self) -> usize {
        self.d * self.d - 1
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.entries[j * self.size() + k]
    }

    pub fn trace(&self) -> f64 {
        (0..self.size()).map(|j| self.get(j, j)).sum()
    }
}

pub fn correlation_matrix(rho: &DensityMatrix, basis: &GellMannBasis) -> Result<CorrelationMatrix> {
    if rho.parties() != 2 {
        return invalid(format!("correlation matrix needs a two-party state, got {}", rho.parties()));
    }
    if basis.d() != rho.local_dim() {
        return invalid(format!("basis has d = {} but the state has local dimension {}", basis.d(), rho.local_dim()));
    }
    let d = basis.d();
    let gens = basis.generators();
    let mut entries = Vec::with_capacity(gens.len() * gens.len());
    for fj in gens {
        for fk in gens {
            entries.push(real_part(product_expectation(&[fj, fk], rho.matrix(), d), "correlation entry")?);
        }
    }
    Ok(CorrelationMatrix { d, entries })
}

/// `(d − 1)/(2d)`, the correlation-trace bound quoted alongside this criterion.
///
/// With `T_jk = Tr(ρ F_j ⊗ F_k)` over a basis normalised to `Tr(F_j F_k) = δ_jk`,
/// [`bipartite_bound`] translates to `Tr(T) ≤ (d − 1)/d` instead; see
/// [`separable_correlation_trace_bound`]. A product state such as `|00⟩` already
/// reaches `Tr(T) = (d−1)/d` for the diagonal generators.
pub fn trace_t_bound(d: usize) -> f64 {
    let d = d as f64;
    (d - 1.0) / (2.0 * d)
}

/// Coefficient `c` in `J_a(ρ; P, P) = 1/d² + c · Tr(T)` for the Gell-Mann
/// construction: `c = (a d² − 1/d)/(d² − 1)`, which equals `t² d² (d+1)²`.
pub fn correlation_coefficient(d: usize, a: f64) -> f64 {
    let d = d as f64;
    (a * d * d - 1.0 / d) / (d * d - 1.0)
}

/// Largest `Tr(T)` compatible with `J_a(ρ; P, P) ≤` [`bipartite_bound`]: `(d − 1)/d`.
pub fn separable_correlation_trace_bound(d: usize) -> f64 {
    let d = d as f64;
    (d - 1.0) / d
}

/// Sufficient detection threshold `(1 + 1/(a d²))/(d + 1)` on the weight of
/// `|Φ⁺⟩⟨Φ⁺|` in a mixture whose other components contribute non-negatively to `J_a`.
pub fn mixture_sufficient_threshold(d: usize, a: f64) -> f64 {
    let df = d as f64;
    (1.0 + 1.0 / (a * df * df)) / (df + 1.0)
}

/// One-parameter state families for threshold scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanFamily {
    /// `α|Φ⁺⟩⟨Φ⁺| + (1−α)I/d²`, `α ∈ [0, 1]`.
    Isotropic,
    /// Bell-diagonal with `p_{0,0} = c` and the other `d² − 1` weights equal, `c ∈ [1/d², 1]`.
    BellDiagonalC,
    /// [`states::diagonal_mixture_state`], `a₁ ∈ (0, 1)`.
    DiagonalMixture,
}

// Distance kept from the open ends of the diagonal-mixture parameter range.
const OPEN_END: f64 = 1e-6;

impl ScanFamily {
    pub fn name(self) -> &'static str {
        match self {
            ScanFamily::Isotropic => "isotropic",
            ScanFamily::BellDiagonalC => "belldiag-c",
            ScanFamily::DiagonalMixture => "example4",
        }
    }

    pub fn range(self, d: usize) -> (f64, f64) {
        match self {
            ScanFamily::Isotropic => (0.0, 1.0),
            ScanFamily::BellDiagonalC => (1.0 / (d * d) as f64, 1.0),
            ScanFamily::DiagonalMixture => (OPEN_END, 1.0 - OPEN_END),
        }
    }

    pub fn state(self, d: usize, param: f64) -> Result<DensityMatrix> {
        match self {
            ScanFamily::Isotropic => states::isotropic(d, param),
            ScanFamily::BellDiagonalC => {
                let rest = (1.0 - param) / (d * d - 1) as f64;
                let mut w = vec![rest; d * d];
                w[0] = param;
                Ok(states::bell_diagonal(d, &w)?.state)
            }
            ScanFamily::DiagonalMixture => states::diagonal_mixture_state(d, param),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub param: f64,
    pub report: DetectionReport,
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub family: ScanFamily,
    pub rows: Vec<ScanRow>,
    /// Smallest parameter at which the criterion fires, refined by bisection.
    pub threshold: Option<f64>,
}

const REFINE_WIDTH: f64 = 1e-12;

/// Evaluates the criterion on `steps` uniform grid points of the family's range,
/// then bisects between the last inconclusive and first detected grid points.
///
/// Assumes detection is monotone in the family parameter.
pub fn threshold_scan(
    family: ScanFamily,
    d: usize,
    p: &GsicSet,
    q: &GsicSet,
    steps: usize,
) -> Result<ScanResult> {
    if steps < 10 {
        return invalid(format!("a scan needs at least 10 grid points, got {steps}"));
    }
    let (lo, hi) = family.range(d);
    let eval = |param: f64| -> Result<DetectionReport> {
        Ok(detect_bipartite(&family.state(d, param)?, p, q)?.labelled(format!("{}:{d}:{param}", family.name())))
    };

    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let param = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
        rows.push(ScanRow { param, report: eval(param)? });
    }

    let threshold = match rows.iter().position(|r| r.report.detected()) {
        None => None,
        Some(0) => Some(rows[0].param),
        Some(i) => {
            let (mut below, mut above) = (rows[i - 1].param, rows[i].param);
            while above - below > REFINE_WIDTH {
                let mid = 0.5 * (below + above);
                if eval(mid)?.detected() {
                    above = mid;
                } else {
                    below = mid;
                }
            }
            Some(above)
        }
    };
    Ok(ScanResult { family, rows, threshold })
}

/// Detection threshold in the isotropic weight `α`, pairing `P` with `conj(P)`.
pub fn isotropic_threshold_scan(d: usize, p: &GsicSet, steps: usize) -> Result<f64> {
    let q = conjugate_gsic(p);
    threshold_scan(ScanFamily::Isotropic, d, p, &q, steps)?
        .threshold
        .ok_or_else(|| Error::InvalidArgument("criterion never fires on the isotropic family".into()))
}
