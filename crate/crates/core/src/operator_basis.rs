//! Orthonormal traceless Hermitian operator bases.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;
use crate::validation::ValidationOutcome;
use crate::{invalid, tol, Result};

/// `d² − 1` traceless Hermitian operators `F_α` with `Tr(F_α F_β) = δ_αβ`,
/// together with their sum `F`.
#[derive(Clone, Debug)]
pub struct GellMannBasis {
    d: usize,
    generators: Vec<ComplexMatrix>,
    f_sum: ComplexMatrix,
    id: String,
}

impl GellMannBasis {
    /// Wraps an arbitrary generator list. Only the shape is checked here;
    /// use [`verify_basis`] for the algebraic conditions.
    pub fn from_generators(d: usize, generators: Vec<ComplexMatrix>, id: impl Into<String>) -> Result<Self> {
        if d < 2 {
            return invalid(format!("basis dimension must be at least 2, got {d}"));
        }
        if generators.len() != d * d - 1 {
            return invalid(format!("expected {} generators for d = {d}, got {}", d * d - 1, generators.len()));
        }
        if let Some(bad) = generators.iter().position(|g| g.dim() != d) {
            return invalid(format!("generator {bad} is not {d}x{d}"));
        }
        let f_sum = generators.iter().fold(ComplexMatrix::zeros(d), |acc, g| &acc + g);
        Ok(Self { d, generators, f_sum, id: id.into() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    /// `F = Σ_α F_α`.
    pub fn f_sum(&self) -> &ComplexMatrix {
        &self.f_sum
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// The entrywise-conjugated basis; again orthonormal, traceless and Hermitian.
    pub fn conjugate(&self) -> Self {
        Self {
            d: self.d,
            generators: self.generators.iter().map(ComplexMatrix::conj).collect(),
            f_sum: self.f_sum.conj(),
            id: conjugate_id(&self.id),
        }
    }
}

pub(crate) fn conjugate_id(id: &str) -> String {
    match id.strip_suffix(":conj") {
        Some(base) => base.to_string(),
        None => format!("{id}:conj"),
    }
}

/// Generalized Gell-Mann basis normalised to `Tr(F_α F_β) = δ_αβ`.
///
/// Order: symmetric `(|j⟩⟨k| + |k⟩⟨j|)/√2` for `j < k` lexicographically, then the
/// antisymmetric `−i(|j⟩⟨k| − |k⟩⟨j|)/√2` in the same order, then the diagonal
/// `(Σ_{m<l} |m⟩⟨m| − l|l⟩⟨l|)/√(l(l+1))` for `l = 1..d−1`.
pub fn build_gell_mann_basis(d: usize) -> Result<GellMannBasis> {
    if d < 2 {
        return invalid(format!("basis dimension must be at least 2, got {d}"));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|j| (j + 1..d).map(move |k| (j, k))).collect();
    let mut generators = Vec::with_capacity(d * d - 1);

    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d);
        m[(j, k)] = Complex64::new(s, 0.0);
        m[(k, j)] = Complex64::new(s, 0.0);
        generators.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d);
        m[(j, k)] = Complex64::new(0.0, -s);
        m[(k, j)] = Complex64::new(0.0, s);
        generators.push(m);
    }
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(d);
        for i in 0..l {
            m[(i, i)] = Complex64::new(norm, 0.0);
        }
        m[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        generators.push(m);
    }

    GellMannBasis::from_generators(d, generators, "gellmann")
}

/// Reports the worst orthonormality, trace and Hermiticity deviations, and
/// whether `f_sum` matches the generator sum.
pub fn verify_basis(basis: &GellMannBasis, tolerance: f64) -> ValidationOutcome {
    let gens = basis.generators();
    let mut ortho: f64 = 0.0;
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((a.trace_product(b) - target).norm());
        }
    }
    let traceless = gens.iter().map(|g| g.trace().norm()).fold(0.0, f64::max);
    let hermitian = gens.iter().map(ComplexMatrix::hermiticity_deviation).fold(0.0, f64::max);
    let sum = gens.iter().fold(ComplexMatrix::zeros(basis.d()), |acc, g| &acc + g);
    let f_sum = sum.max_abs_diff(basis.f_sum());

    ValidationOutcome::from_deviations(
        tolerance,
        vec![
            ("orthonormality", ortho),
            ("traceless", traceless),
            ("hermiticity", hermitian),
            ("f_sum", f_sum),
        ],
    )
}

/// [`verify_basis`] at the default tolerance.
pub fn verify_basis_default(basis: &GellMannBasis) -> ValidationOutcome {
    verify_basis(basis, tol::VALIDATION)
}
