//! General SIC measurements built from an orthonormal traceless Hermitian basis.
//!
//! For a basis `{F_α}` with sum `F`, the operators
//!
//! ```text
//! P_α   = I/d² + t [F − d(d+1) F_α]     α = 1 .. d²−1
//! P_d²  = I/d² + t (d+1) F
//! ```
//!
//! resolve the identity, have `Tr(P_α) = 1/d`, equal purity
//! `a = 1/d³ + t²(d−1)(d+1)³` and equal pairwise overlaps `(1 − da)/(d(d²−1))`.
//! They are positive only on a bounded interval of `t`, located numerically by
//! [`feasible_range`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::matrix::ComplexMatrix;
use crate::operator_basis::{conjugate_id, verify_basis, GellMannBasis};
use crate::states::DensityMatrix;
use crate::validation::ValidationOutcome;
use crate::{invalid, tol, Error, Result};

/// A set of `d²` GSIC operators with its construction metadata.
#[derive(Clone, Debug)]
pub struct GsicSet {
    d: usize,
    t: f64,
    a: f64,
    operators: Vec<ComplexMatrix>,
    basis_id: String,
}

impl GsicSet {
    /// Assembles a set without checking the GSIC conditions (only shapes).
    /// Run [`validate_gsic`] on anything built this way.
    pub fn from_parts(
        d: usize,
        t: f64,
        a: f64,
        operators: Vec<ComplexMatrix>,
        basis_id: impl Into<String>,
    ) -> Result<Self> {
        if d < 2 {
            return invalid(format!("GSIC dimension must be at least 2, got {d}"));
        }
        if operators.len() != d * d {
            return invalid(format!("expected {} operators for d = {d}, got {}", d * d, operators.len()));
        }
        if let Some(bad) = operators.iter().position(|p| p.dim() != d) {
            return invalid(format!("operator {bad} is not {d}x{d}"));
        }
        Ok(Self { d, t, a, operators, basis_id: basis_id.into() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Common purity `Tr(P_α²)`.
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn basis_id(&self) -> &str {
        &self.basis_id
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&GsicDocument::from(self))?)
    }

    /// Parses a GSIC document and re-validates it at the default tolerance.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GsicDocument = serde_json::from_str(text)?;
        let set = GsicSet::try_from(doc)?;
        let outcome = validate_gsic(&set, tol::VALIDATION);
        if !outcome.pass {
            let failed: Vec<String> = outcome
                .failing()
                .map(|c| format!("{} (deviation {:e})", c.name, c.max_deviation))
                .collect();
            return invalid(format!("loaded GSIC set fails validation: {}", failed.join(", ")));
        }
        Ok(set)
    }
}

/// On-disk form: `{d, t, a, basis_id, operators: [[[re, im], ...], ...]}`, each
/// operator row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GsicDocument {
    pub d: usize,
    pub t: f64,
    pub a: f64,
    pub basis_id: String,
    pub operators: Vec<Vec<[f64; 2]>>,
}

impl From<&GsicSet> for GsicDocument {
    fn from(g: &GsicSet) -> Self {
        Self {
            d: g.d,
            t: g.t,
            a: g.a,
            basis_id: g.basis_id.clone(),
            operators: g
                .operators
                .iter()
                .map(|p| p.row_major().into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<GsicDocument> for GsicSet {
    type Error = Error;

    fn try_from(doc: GsicDocument) -> Result<Self> {
        let operators = doc
            .operators
            .into_iter()
            .map(|entries| {
                ComplexMatrix::from_row_major(doc.d, entries.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        GsicSet::from_parts(doc.d, doc.t, doc.a, operators, doc.basis_id)
    }
}

/// `a(t) = 1/d³ + t²(d−1)(d+1)³`.
pub fn purity_parameter(d: usize, t: f64) -> f64 {
    let d = d as f64;
    1.0 / d.powi(3) + t * t * (d - 1.0) * (d + 1.0).powi(3)
}

/// Overlap `Tr(P_α P_β)` for `α ≠ β`: `(1 − da)/(d(d²−1))`.
pub fn cross_overlap(d: usize, a: f64) -> f64 {
    let d = d as f64;
    (1.0 - d * a) / (d * (d * d - 1.0))
}

/// The non-negative `t` at which `a(t) = 1/d²`.
pub fn t_for_rank_one_purity(d: usize) -> f64 {
    let d = d as f64;
    (d * (d + 1.0)).powf(-1.5)
}

fn operators_at(basis: &GellMannBasis, t: f64) -> Vec<ComplexMatrix> {
    let d = basis.d();
    let df = d as f64;
    let base = ComplexMatrix::identity(d).scale(1.0 / (df * df));
    let f = basis.f_sum();
    let mut ops: Vec<ComplexMatrix> = basis
        .generators()
        .iter()
        .map(|fa| &base + &(f - &fa.scale(df * (df + 1.0))).scale(t))
        .collect();
    ops.push(&base + &f.scale(t * (df + 1.0)));
    ops
}

/// Smallest eigenvalue over all operators at `t`, and the index that attains it.
fn min_eigenvalue_at(basis: &GellMannBasis, t: f64) -> (usize, f64) {
    operators_at(basis, t)
        .iter()
        .map(ComplexMatrix::min_eigenvalue)
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, ev)| if ev < best.1 { (i, ev) } else { best })
}

fn ensure_valid_basis(basis: &GellMannBasis) -> Result<()> {
    let outcome = verify_basis(basis, tol::VALIDATION);
    if outcome.pass {
        Ok(())
    } else {
        let failed: Vec<&str> = outcome.failing().map(|c| c.name).collect();
        invalid(format!("operator basis fails: {}", failed.join(", ")))
    }
}

/// Builds the GSIC set for parameter `t`.
///
/// Fails with [`Error::InfeasibleParameter`] when some operator has an
/// eigenvalue below `−1e-10`.
pub fn construct_gsic(basis: &GellMannBasis, t: f64) -> Result<GsicSet> {
    ensure_valid_basis(basis)?;
    if !t.is_finite() {
        return invalid(format!("t must be finite, got {t}"));
    }
    let operators = operators_at(basis, t);
    let worst = operators
        .iter()
        .map(ComplexMatrix::min_eigenvalue)
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, ev)| if ev < best.1 { (i, ev) } else { best });
    if worst.1 < -tol::PSD {
        return Err(Error::InfeasibleParameter { t, index: worst.0, eigenvalue: worst.1 });
    }
    let d = basis.d();
    GsicSet::from_parts(d, t, purity_parameter(d, t), operators, basis.id())
}

/// Which constraint fixed the returned `t_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActiveCap {
    /// Positivity of the operators.
    Positivity,
    /// The purity ceiling `a ≤ 1/d²`.
    AMax,
}

impl ActiveCap {
    pub fn as_str(self) -> &'static str {
        match self {
            ActiveCap::Positivity => "positivity",
            ActiveCap::AMax => "a-max",
        }
    }
}

/// Result of the feasibility search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeasibleT {
    /// `min(positivity_limit, a_cap)`.
    pub t_max: f64,
    /// Largest `t` with every operator PSD, to within the bisection precision.
    pub positivity_limit: f64,
    /// `t` where `a(t) = 1/d²`.
    pub a_cap: f64,
    pub active_cap: ActiveCap,
}

const BISECTION_PRECISION: f64 = 1e-12;
// Bracket-width slack below which the two caps are considered to coincide.
const CAP_TIE: f64 = 1e-10;

/// Locates the largest feasible `t ≥ 0` by bisection on the minimum eigenvalue.
///
/// The feasible set in `t` is an interval containing 0 (each operator is affine
/// in `t` and `t = 0` gives the interior point `I/d²`), so bisection on the sign
/// of the minimum eigenvalue converges to its upper end.
pub fn feasible_range(basis: &GellMannBasis) -> Result<FeasibleT> {
    ensure_valid_basis(basis)?;
    let a_cap = t_for_rank_one_purity(basis.d());
    let feasible = |t: f64| min_eigenvalue_at(basis, t).1 >= 0.0;

    let mut lo = 0.0;
    let mut hi = a_cap;
    while feasible(hi) {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > BISECTION_PRECISION {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let positivity_limit = lo;

    let (t_max, active_cap) = if a_cap <= positivity_limit + CAP_TIE {
        (a_cap.min(positivity_limit), ActiveCap::AMax)
    } else {
        (positivity_limit, ActiveCap::Positivity)
    };
    Ok(FeasibleT { t_max, positivity_limit, a_cap, active_cap })
}

/// Largest feasible `t`; see [`feasible_range`].
pub fn max_feasible_t(basis: &GellMannBasis) -> Result<f64> {
    feasible_range(basis).map(|r| r.t_max)
}

/// Minimum eigenvalue over the operators built at `t` (no feasibility check).
pub fn min_eigenvalue_for_t(basis: &GellMannBasis, t: f64) -> f64 {
    min_eigenvalue_at(basis, t).1
}

/// `{conj(P_α)}`: again a GSIC set with the same `a`.
pub fn conjugate_gsic(g: &GsicSet) -> GsicSet {
    GsicSet {
        d: g.d,
        t: g.t,
        a: g.a,
        operators: g.operators.iter().map(ComplexMatrix::conj).collect(),
        basis_id: conjugate_id(&g.basis_id),
    }
}

/// Checks completeness, equal purity, equal overlaps, `Tr(P_α) = 1/d`,
/// positivity and the `a(t)` relation, reporting the worst deviation of each.
pub fn validate_gsic(g: &GsicSet, tolerance: f64) -> ValidationOutcome {
    let d = g.d;
    let df = d as f64;
    let ops = &g.operators;

    let sum = ops.iter().fold(ComplexMatrix::zeros(d), |acc, p| &acc + p);
    let completeness = sum.max_abs_diff(&ComplexMatrix::identity(d));

    let cross_target = cross_overlap(d, g.a);
    let mut purity: f64 = 0.0;
    let mut cross: f64 = 0.0;
    for (i, p) in ops.iter().enumerate() {
        purity = purity.max((p.trace_product(p) - g.a).norm());
        for q in &ops[i + 1..] {
            cross = cross.max((p.trace_product(q) - cross_target).norm());
        }
    }
    let unit_trace = ops.iter().map(|p| (p.trace() - 1.0 / df).norm()).fold(0.0, f64::max);
    let hermitian = ops.iter().map(ComplexMatrix::hermiticity_deviation).fold(0.0, f64::max);
    let psd = ops.iter().map(|p| (-p.min_eigenvalue()).max(0.0)).fold(0.0, f64::max);
    let eq2 = (g.a - purity_parameter(d, g.t)).abs();

    ValidationOutcome::from_deviations(
        tolerance,
        vec![
            ("completeness", completeness),
            ("purity", purity),
            ("cross_trace", cross),
            ("unit_trace", unit_trace),
            ("hermiticity", hermitian),
            ("psd", psd),
            ("purity_formula", eq2),
        ],
    )
}

/// `Σ_j [Tr(P_j ρ)]²` for a single-qudit state, by direct summation.
pub fn index_of_coincidence(g: &GsicSet, rho: &DensityMatrix) -> Result<f64> {
    if rho.parties() != 1 || rho.local_dim() != g.d {
        return invalid(format!(
            "index of coincidence needs a single {}-dimensional system, got {} parties of dimension {}",
            g.d,
            rho.parties(),
            rho.local_dim()
        ));
    }
    Ok(g.operators.iter().map(|p| p.trace_product(rho.matrix()).re.powi(2)).sum())
}

/// Closed form of the index of coincidence in terms of `Tr(ρ²)`:
/// `[(ad³ − 1)Tr(ρ²) + d(1 − ad)] / (d(d²−1))`.
pub fn coincidence_closed_form(d: usize, a: f64, purity: f64) -> f64 {
    let d = d as f64;
    ((a * d.powi(3) - 1.0) * purity + d * (1.0 - a * d)) / (d * (d * d - 1.0))
}
