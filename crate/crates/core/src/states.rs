//! Density matrices and the two-qudit state families used to exercise the criteria.
//!
//! Multi-party indices follow the Kronecker convention: the first party is the
//! most significant digit of a base-`d` row or column index. Party indices in
//! this API are zero-based.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::matrix::ComplexMatrix;
use crate::{invalid, tol, Error, Result};

/// A Hermitian, unit-trace, positive semidefinite operator on `(C^d)^{⊗N}`.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    local_dim: usize,
    parties: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates the state invariants at the default tolerance.
    pub fn new(local_dim: usize, parties: usize, matrix: ComplexMatrix) -> Result<Self> {
        if local_dim < 2 {
            return invalid(format!("local dimension must be at least 2, got {local_dim}"));
        }
        if parties < 1 {
            return invalid("a state needs at least one party");
        }
        let expected = checked_pow(local_dim, parties)?;
        if matrix.dim() != expected {
            return invalid(format!(
                "matrix is {0}x{0}, expected {expected}x{expected} for {parties} parties of dimension {local_dim}",
                matrix.dim()
            ));
        }
        let herm = matrix.hermiticity_deviation();
        if herm > tol::VALIDATION {
            return invalid(format!("matrix is not Hermitian (deviation {herm:e})"));
        }
        let trace = matrix.trace();
        if (trace - 1.0).norm() > tol::VALIDATION {
            return invalid(format!("trace is {trace}, expected 1"));
        }
        let min = matrix.min_eigenvalue();
        if min < -tol::PSD {
            return invalid(format!("matrix is not positive semidefinite (min eigenvalue {min:e})"));
        }
        Ok(Self { local_dim, parties, matrix })
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    /// Marginal state of a single party.
    pub fn reduced(&self, party: usize) -> Result<DensityMatrix> {
        if party >= self.parties {
            return invalid(format!("party {party} out of range for {} parties", self.parties));
        }
        let d = self.local_dim;
        let n = self.matrix.dim();
        let stride = d.pow((self.parties - 1 - party) as u32);
        let mut out = ComplexMatrix::zeros(d);
        for r in 0..n {
            for c in 0..n {
                // the other parties' digits must agree
                if r - digit(r, stride, d) * stride == c - digit(c, stride, d) * stride {
                    out[(digit(r, stride, d), digit(c, stride, d))] += self.matrix[(r, c)];
                }
            }
        }
        DensityMatrix::new(d, 1, out)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&DensityMatrixDocument::from(self))?)
    }

    /// Parses and re-validates a density-matrix document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DensityMatrixDocument = serde_json::from_str(text)?;
        doc.try_into()
    }
}

fn digit(index: usize, stride: usize, d: usize) -> usize {
    (index / stride) % d
}

fn checked_pow(d: usize, n: usize) -> Result<usize> {
    u32::try_from(n)
        .ok()
        .and_then(|n| d.checked_pow(n))
        .ok_or_else(|| Error::InvalidArgument(format!("{d}^{n} overflows")))
}

/// On-disk form: `{local_dim, parties, matrix: [[re, im], ...]}` with the matrix row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityMatrixDocument {
    pub local_dim: usize,
    pub parties: usize,
    pub matrix: Vec<[f64; 2]>,
}

impl From<&DensityMatrix> for DensityMatrixDocument {
    fn from(rho: &DensityMatrix) -> Self {
        Self {
            local_dim: rho.local_dim,
            parties: rho.parties,
            matrix: rho.matrix.row_major().into_iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<DensityMatrixDocument> for DensityMatrix {
    type Error = Error;

    fn try_from(doc: DensityMatrixDocument) -> Result<Self> {
        if doc.local_dim < 2 || doc.parties < 1 {
            return invalid("local_dim must be >= 2 and parties >= 1");
        }
        let dim = checked_pow(doc.local_dim, doc.parties)?;
        let entries = doc.matrix.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        DensityMatrix::new(doc.local_dim, doc.parties, ComplexMatrix::from_row_major(dim, entries)?)
    }
}

/// `|Φ⁺⟩ = Σ_i |ii⟩/√d`.
pub fn max_entangled_vector(d: usize) -> Vec<Complex64> {
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        v[i * d + i] = amp;
    }
    v
}

/// `|Φ⁺⟩⟨Φ⁺|` on two qudits.
pub fn max_entangled(d: usize) -> Result<DensityMatrix> {
    if d < 2 {
        return invalid(format!("local dimension must be at least 2, got {d}"));
    }
    DensityMatrix::new(d, 2, ComplexMatrix::outer(&max_entangled_vector(d)))
}

/// `α|Φ⁺⟩⟨Φ⁺| + (1 − α)I/d²`.
pub fn isotropic(d: usize, alpha: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&alpha) {
        return invalid(format!("isotropic weight must lie in [0, 1], got {alpha}"));
    }
    let phi = max_entangled(d)?.into_matrix();
    let noise = ComplexMatrix::identity(d * d).scale((1.0 - alpha) / (d * d) as f64);
    DensityMatrix::new(d, 2, &phi.scale(alpha) + &noise)
}

/// Clock-and-shift unitary `U_{s,t} = Σ_j ζ^{sj} |j⟩⟨j ⊕ t|`, `ζ = e^{2πi/d}`.
#[derive(Clone, Debug)]
pub struct WeylOperator {
    pub d: usize,
    pub s: usize,
    pub t_idx: usize,
    pub matrix: ComplexMatrix,
}

pub fn weyl_operator(d: usize, s: usize, t_idx: usize) -> Result<WeylOperator> {
    if d < 2 {
        return invalid(format!("local dimension must be at least 2, got {d}"));
    }
    if s >= d || t_idx >= d {
        return invalid(format!("Weyl indices ({s}, {t_idx}) out of range for d = {d}"));
    }
    let mut matrix = ComplexMatrix::zeros(d);
    for j in 0..d {
        // exact phases at the quarter turns keep U_{1,1} for d = 2 free of 1e-16 residue
        let phase = ((s * j) % d) as f64 * 2.0 * PI / d as f64;
        matrix[(j, (j + t_idx) % d)] = unit_phase(phase, (s * j) % d, d);
    }
    Ok(WeylOperator { d, s, t_idx, matrix })
}

fn unit_phase(angle: f64, k: usize, d: usize) -> Complex64 {
    if (4 * k).is_multiple_of(d) {
        match 4 * k / d {
            0 => return Complex64::new(1.0, 0.0),
            1 => return Complex64::new(0.0, 1.0),
            2 => return Complex64::new(-1.0, 0.0),
            3 => return Complex64::new(0.0, -1.0),
            _ => {}
        }
    }
    Complex64::from_polar(1.0, angle)
}

/// `|Φ⁺_{s,t}⟩ = (U_{s,t} ⊗ I)|Φ⁺⟩`.
pub fn bell_vector(d: usize, s: usize, t_idx: usize) -> Result<Vec<Complex64>> {
    let u = weyl_operator(d, s, t_idx)?.matrix;
    let phi = max_entangled_vector(d);
    let n = d * d;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (r, slot) in out.iter_mut().enumerate() {
        let (a, b) = (r / d, r % d);
        for a2 in 0..d {
            *slot += u[(a, a2)] * phi[a2 * d + b];
        }
    }
    Ok(out)
}

/// A Bell-diagonal state and its largest mixing weight `c`.
#[derive(Clone, Debug)]
pub struct BellDiagonal {
    pub state: DensityMatrix,
    pub max_weight: f64,
}

/// `Σ_{s,t} p_{s,t} |Φ⁺_{s,t}⟩⟨Φ⁺_{s,t}|` with `weights[s * d + t] = p_{s,t}`.
pub fn bell_diagonal(d: usize, weights: &[f64]) -> Result<BellDiagonal> {
    if d < 2 {
        return invalid(format!("local dimension must be at least 2, got {d}"));
    }
    if weights.len() != d * d {
        return invalid(format!("expected {} Bell weights, got {}", d * d, weights.len()));
    }
    if let Some(w) = weights.iter().find(|w| w.is_nan() || **w < 0.0) {
        return invalid(format!("Bell weights must be non-negative, got {w}"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > tol::EXACT {
        return invalid(format!("Bell weights must sum to 1, got {total}"));
    }
    let mut m = ComplexMatrix::zeros(d * d);
    for s in 0..d {
        for t in 0..d {
            let p = weights[s * d + t];
            if p > 0.0 {
                m = &m + &ComplexMatrix::outer(&bell_vector(d, s, t)?).scale(p);
            }
        }
    }
    let max_weight = weights.iter().copied().fold(0.0, f64::max);
    Ok(BellDiagonal { state: DensityMatrix::new(d, 2, m)?, max_weight })
}

/// `a₁|Φ⁺⟩⟨Φ⁺| + (a₂/d) Σ_{k} Σ_{i=2..d} |k⟩⟨k| ⊗ |k+i−1⟩⟨k+i−1|` with
/// `a₂ = (1 − a₁)/(d − 1)` and the second index taken mod `d`.
pub fn diagonal_mixture_state(d: usize, a1: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return invalid(format!("local dimension must be at least 2, got {d}"));
    }
    if !(a1 > 0.0 && a1 < 1.0) {
        return invalid(format!("a1 must lie in (0, 1), got {a1}"));
    }
    let a2 = (1.0 - a1) / (d - 1) as f64;
    let mut weights = vec![a2; d];
    weights[0] = a1;
    diagonal_mixture_state_weighted(d, &weights)
}

/// General-weight form of [`diagonal_mixture_state`]: `weights = [a₁, a₂, …, a_d]`,
/// each positive and summing to one.
pub fn diagonal_mixture_state_weighted(d: usize, weights: &[f64]) -> Result<DensityMatrix> {
    if d < 2 {
        return invalid(format!("local dimension must be at least 2, got {d}"));
    }
    if weights.len() != d {
        return invalid(format!("expected {d} weights, got {}", weights.len()));
    }
    if let Some(w) = weights.iter().find(|w| w.is_nan() || **w <= 0.0) {
        return invalid(format!("weights must be positive, got {w}"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > tol::EXACT {
        return invalid(format!("weights must sum to 1, got {total}"));
    }
    let mut m = ComplexMatrix::outer(&max_entangled_vector(d)).scale(weights[0]);
    for k in 0..d {
        for (i, &ai) in weights.iter().enumerate().skip(1) {
            // 1-based k + i − 1 becomes 0-based k + i with i counted from 0
            let partner = (k + i) % d;
            let idx = k * d + partner;
            m[(idx, idx)] += Complex64::new(ai / d as f64, 0.0);
        }
    }
    DensityMatrix::new(d, 2, m)
}

/// Kronecker product of a non-empty list, first factor most significant.
pub fn tensor(factors: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("tensor product of an empty list".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.kron(f)))
}

/// Transposes the indices of one party of an `N`-party operator.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    local_dim: usize,
    parties: usize,
    party: usize,
) -> Result<ComplexMatrix> {
    if party >= parties {
        return invalid(format!("party {party} out of range for {parties} parties"));
    }
    if m.dim() != checked_pow(local_dim, parties)? {
        return invalid(format!("matrix dimension {} does not match {local_dim}^{parties}", m.dim()));
    }
    let stride = local_dim.pow((parties - 1 - party) as u32);
    let n = m.dim();
    Ok(ComplexMatrix::from_fn(n, |r, c| {
        let (dr, dc) = (digit(r, stride, local_dim), digit(c, stride, local_dim));
        let r2 = r - dr * stride + dc * stride;
        let c2 = c - dc * stride + dr * stride;
        m[(r2, c2)]
    }))
}

/// Partial transpose of `rho` on `party` (zero-based).
pub fn partial_transpose(rho: &DensityMatrix, party: usize) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.local_dim, rho.parties, party)
}

fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Haar-distributed pure state from a normalised complex Gaussian vector.
pub fn random_pure_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let mut v = gaussian_vector(rng, dim);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// Convex mixture of `terms` random pure product states with normalised uniform weights.
pub fn random_separable_with<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    parties: usize,
    terms: usize,
) -> Result<DensityMatrix> {
    if d < 2 || parties < 1 {
        return invalid("random_separable needs d >= 2 and at least one party");
    }
    if terms < 1 {
        return invalid("random_separable needs at least one term");
    }
    let weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + f64::MIN_POSITIVE).collect();
    let total: f64 = weights.iter().sum();
    let dim = checked_pow(d, parties)?;
    let mut m = ComplexMatrix::zeros(dim);
    for w in weights {
        let mut v = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..parties {
            let local = random_pure_vector(rng, d);
            v = v.iter().flat_map(|a| local.iter().map(move |b| a * b)).collect();
        }
        m = &m + &ComplexMatrix::outer(&v).scale(w / total);
    }
    DensityMatrix::new(d, parties, m)
}

/// Seeded form of [`random_separable_with`]; identical seeds give bitwise identical states.
pub fn random_separable(d: usize, parties: usize, terms: usize, seed: u64) -> Result<DensityMatrix> {
    random_separable_with(&mut ChaCha8Rng::seed_from_u64(seed), d, parties, terms)
}

/// Full-rank random state `G G† / Tr(G G†)` with `G` complex Ginibre.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, d: usize, parties: usize) -> Result<DensityMatrix> {
    if d < 2 || parties < 1 {
        return invalid("random_density needs d >= 2 and at least one party");
    }
    let dim = checked_pow(d, parties)?;
    let g = ComplexMatrix::from_row_major(dim, gaussian_vector(rng, dim * dim))?;
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    let mut m = gg.scale(1.0 / tr);
    // remove rounding asymmetry so validation sees an exactly Hermitian matrix
    m = (&m + &m.adjoint()).scale(0.5);
    DensityMatrix::new(d, parties, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, eps: f64) -> bool {
        (a - b).abs() <= eps
    }

    #[test]
    fn max_entangled_qubits() {
        let rho = max_entangled(2).unwrap();
        let m = rho.matrix();
        for r in 0..4 {
            for c in 0..4 {
                let expected = if [0, 3].contains(&r) && [0, 3].contains(&c) { 0.5 } else { 0.0 };
                assert!((m[(r, c)] - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn max_entangled_is_pure_with_maximally_mixed_marginals() {
        for d in 2..=5 {
            let rho = max_entangled(d).unwrap();
            assert!(close(rho.purity(), 1.0, 1e-12));
            let id = ComplexMatrix::identity(d).scale(1.0 / d as f64);
            for party in 0..2 {
                assert!(rho.reduced(party).unwrap().matrix().max_abs_diff(&id) < 1e-12);
            }
        }
        let ev = max_entangled(3).unwrap().matrix().hermitian_eigenvalues();
        assert!(close(ev[8], 1.0, 1e-12));
        assert!(ev[..8].iter().all(|e| e.abs() < 1e-12));
        assert!(max_entangled(1).is_err());
    }

    #[test]
    fn isotropic_endpoints_and_spectrum() {
        let d = 3;
        let mixed = isotropic(d, 0.0).unwrap();
        assert!(mixed.matrix().max_abs_diff(&ComplexMatrix::identity(9).scale(1.0 / 9.0)) < 1e-15);
        let pure = isotropic(d, 1.0).unwrap();
        assert!(pure.matrix().max_abs_diff(max_entangled(d).unwrap().matrix()) < 1e-15);

        let ev = isotropic(3, 0.3).unwrap().matrix().hermitian_eigenvalues();
        assert!(close(ev[8], 0.3 + 0.7 / 9.0, 1e-12));
        assert!(ev[..8].iter().all(|e| close(*e, 0.7 / 9.0, 1e-12)));

        assert!(isotropic(2, -0.1).is_err());
        assert!(isotropic(2, 1.1).is_err());
    }

    #[test]
    fn weyl_operators() {
        let id = weyl_operator(4, 0, 0).unwrap();
        assert_eq!(id.matrix, ComplexMatrix::identity(4));

        let u = weyl_operator(2, 1, 1).unwrap().matrix;
        let mut expected = ComplexMatrix::zeros(2);
        expected[(0, 1)] = Complex64::new(1.0, 0.0);
        expected[(1, 0)] = Complex64::new(-1.0, 0.0);
        assert_eq!(u, expected);

        for d in 2..=5 {
            for s in 0..d {
                for t in 0..d {
                    let u = weyl_operator(d, s, t).unwrap().matrix;
                    assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(d)) < 1e-14);
                }
            }
        }
        assert!(weyl_operator(3, 3, 0).is_err());
        assert!(weyl_operator(3, 0, 3).is_err());
    }

    #[test]
    fn bell_vectors_are_orthonormal() {
        for d in 2..=5 {
            let vecs: Vec<_> = (0..d * d).map(|k| bell_vector(d, k / d, k % d).unwrap()).collect();
            for (i, u) in vecs.iter().enumerate() {
                for (j, v) in vecs.iter().enumerate() {
                    let ip: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - target).norm() < 1e-12, "d={d} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn bell_diagonal_cases() {
        let d = 3;
        let mut w = vec![0.0; 9];
        w[0] = 1.0;
        let single = bell_diagonal(d, &w).unwrap();
        assert!(single.state.matrix().max_abs_diff(max_entangled(d).unwrap().matrix()) < 1e-14);
        assert_eq!(single.max_weight, 1.0);

        let uniform = bell_diagonal(d, &[1.0 / 9.0; 9]).unwrap();
        assert!(uniform.state.matrix().max_abs_diff(&ComplexMatrix::identity(9).scale(1.0 / 9.0)) < 1e-12);

        let b = bell_diagonal(2, &[0.7, 0.1, 0.1, 0.1]).unwrap();
        assert_eq!(b.max_weight, 0.7);

        assert!(bell_diagonal(2, &[1.1, -0.1, 0.0, 0.0]).is_err());
        assert!(bell_diagonal(2, &[0.5, 0.1, 0.1, 0.1]).is_err());
        assert!(bell_diagonal(2, &[1.0]).is_err());
    }

    #[test]
    fn isotropic_matches_bell_diagonal() {
        for d in 2..=4 {
            for &alpha in &[0.0, 0.2, 0.55, 1.0] {
                let rest = (1.0 - alpha) / (d * d) as f64;
                let mut w = vec![rest; d * d];
                w[0] = alpha + rest;
                let b = bell_diagonal(d, &w).unwrap();
                let iso = isotropic(d, alpha).unwrap();
                assert!(b.state.matrix().max_abs_diff(iso.matrix()) < 1e-12);
            }
        }
    }

    #[test]
    fn diagonal_mixture_structure() {
        let rho = diagonal_mixture_state(2, 0.8).unwrap();
        assert!(close(rho.matrix().trace().re, 1.0, 1e-12));
        assert!(rho.matrix().min_eigenvalue() > -1e-12);

        for d in 2..=4 {
            let a1 = 0.4;
            let a2 = (1.0 - a1) / (d - 1) as f64;
            let rho = diagonal_mixture_state(d, a1).unwrap();
            let m = rho.matrix();
            for r in 0..d * d {
                for c in 0..d * d {
                    let (rk, rl) = (r / d, r % d);
                    let (ck, cl) = (c / d, c % d);
                    let phi = if rk == rl && ck == cl { a1 / d as f64 } else { 0.0 };
                    let diag = if r == c && rk != rl { a2 / d as f64 } else { 0.0 };
                    assert!((m[(r, c)] - (phi + diag)).norm() < 1e-14, "d={d} ({r},{c})");
                }
            }
        }
        assert!(diagonal_mixture_state(3, 0.0).is_err());
        assert!(diagonal_mixture_state(3, 1.0).is_err());
    }

    #[test]
    fn tensor_and_partial_transpose() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&[i2.clone(), i2.clone()]).unwrap(), ComplexMatrix::identity(4));
        assert!(tensor(&[]).is_err());

        let rho = random_separable(3, 2, 4, 11).unwrap();
        for party in 0..2 {
            let once = partial_transpose(&rho, party).unwrap();
            let twice = partial_transpose_matrix(&once, 3, 2, party).unwrap();
            assert!(twice.max_abs_diff(rho.matrix()) == 0.0);
        }

        let pt = partial_transpose(&max_entangled(2).unwrap(), 1).unwrap();
        assert!(close(pt.min_eigenvalue(), -0.5, 1e-12));
        assert!(partial_transpose(&rho, 2).is_err());
    }

    #[test]
    fn full_transpose_is_both_partial_transposes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_density(&mut rng, 2, 3).unwrap();
        let mut m = rho.matrix().clone();
        for party in 0..3 {
            m = partial_transpose_matrix(&m, 2, 3, party).unwrap();
        }
        assert!(m.max_abs_diff(&rho.matrix().transpose()) < 1e-15);
    }

    #[test]
    fn random_separable_contract() {
        let pure = random_separable(3, 2, 1, 5).unwrap();
        assert!(close(pure.purity(), 1.0, 1e-12));
        let a = random_separable(2, 3, 6, 99).unwrap();
        let b = random_separable(2, 3, 6, 99).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert!(a.matrix().min_eigenvalue() > -1e-12);
        assert!(random_separable(2, 2, 0, 1).is_err());
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let rho = isotropic(2, 0.4).unwrap();
        let back = DensityMatrix::from_json(&rho.to_json().unwrap()).unwrap();
        assert_eq!(back.matrix(), rho.matrix());
        assert_eq!((back.local_dim(), back.parties()), (2, 2));

        let bad = r#"{"local_dim":2,"parties":1,"matrix":[[1,0],[0,0],[0,0],[1,0]]}"#;
        assert!(DensityMatrix::from_json(bad).is_err());
        let short = r#"{"local_dim":2,"parties":1,"matrix":[[1,0]]}"#;
        assert!(DensityMatrix::from_json(short).is_err());
    }

    #[test]
    fn constructor_rejects_invalid_states() {
        let mut m = ComplexMatrix::identity(2).scale(0.5);
        m[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(DensityMatrix::new(2, 1, m).is_err());
        let neg = ComplexMatrix::from_row_major(
            2,
            vec![Complex64::new(1.5, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(-0.5, 0.0)],
        )
        .unwrap();
        assert!(DensityMatrix::new(2, 1, neg).is_err());
        assert!(DensityMatrix::new(2, 2, ComplexMatrix::identity(2).scale(0.5)).is_err());
    }
}
