//! Independent checks: the PPT test, and a naive recomputation of the `J`
//! functionals that builds every Kronecker product explicitly.
//!
//! Nothing here shares code with [`crate::criteria`] beyond the matrix type;
//! the products, multiplications and traces are written out by hand.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;
use crate::states::{partial_transpose, DensityMatrix};
use crate::{invalid, tol, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PptOutcome {
    pub min_eigenvalue: f64,
    /// Negative partial transpose; certifies entanglement.
    pub npt: bool,
}

/// Minimum eigenvalue of the partial transpose on the second party.
pub fn ppt_test(rho: &DensityMatrix) -> Result<PptOutcome> {
    if rho.parties() != 2 {
        return invalid(format!("PPT test needs a two-party state, got {}", rho.parties()));
    }
    let min_eigenvalue = partial_transpose(rho, 1)?.min_eigenvalue();
    Ok(PptOutcome { min_eigenvalue, npt: min_eigenvalue < -tol::PSD })
}

fn naive_kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

fn naive_trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let n = a.dim();
    let mut prod = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..n {
                s += a[(i, k)] * b[(k, j)];
            }
            prod[(i, j)] = s;
        }
    }
    (0..n).map(|i| prod[(i, i)]).sum()
}

/// `Σ_j Tr((⊗_i lists[i][j]) ρ)` via full matrices; `lists[i]` holds party `i`'s operators.
pub fn brute_force_j(rho: &DensityMatrix, lists: &[&[ComplexMatrix]]) -> Result<f64> {
    if lists.len() != rho.parties() {
        return invalid(format!("{} operator lists for a {}-party state", lists.len(), rho.parties()));
    }
    let count = lists[0].len();
    if lists.iter().any(|l| l.len() != count) {
        return invalid("operator lists differ in length");
    }
    if lists.iter().flat_map(|l| l.iter()).any(|op| op.dim() != rho.local_dim()) {
        return invalid("operator dimension does not match the state's local dimension");
    }
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..count {
        let mut full = lists[0][j].clone();
        for list in &lists[1..] {
            full = naive_kron(&full, &list[j]);
        }
        total += naive_trace_of_product(&full, rho.matrix());
    }
    Ok(total.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsic::{conjugate_gsic, construct_gsic, max_feasible_t};
    use crate::operator_basis::build_gell_mann_basis;
    use crate::states::{isotropic, max_entangled, random_separable};

    #[test]
    fn bell_state_is_npt() {
        let r = ppt_test(&max_entangled(2).unwrap()).unwrap();
        assert!((r.min_eigenvalue + 0.5).abs() < 1e-12);
        assert!(r.npt);
    }

    #[test]
    fn isotropic_boundary_is_ppt() {
        for d in 2..=4 {
            let r = ppt_test(&isotropic(d, 1.0 / (d + 1) as f64).unwrap()).unwrap();
            assert!(r.min_eigenvalue >= -1e-10, "d={d}: {}", r.min_eigenvalue);
            assert!(!r.npt);
            assert!(ppt_test(&isotropic(d, 1.0 / (d + 1) as f64 + 0.01).unwrap()).unwrap().npt);
        }
    }

    #[test]
    fn product_states_are_ppt() {
        for seed in 0..20 {
            assert!(!ppt_test(&random_separable(3, 2, 1, seed).unwrap()).unwrap().npt);
        }
    }

    #[test]
    fn ppt_mapped_separable_state_stays_ppt() {
        // the partial transpose of a separable state is again a separable state
        let rho = random_separable(2, 2, 5, 7).unwrap();
        let mapped = DensityMatrix::new(2, 2, partial_transpose(&rho, 1).unwrap()).unwrap();
        assert!(!ppt_test(&mapped).unwrap().npt);
    }

    #[test]
    fn rejects_non_bipartite() {
        assert!(ppt_test(&random_separable(2, 3, 2, 1).unwrap()).is_err());
    }

    #[test]
    fn maximally_mixed_gives_inverse_square() {
        for d in 2..=3 {
            let b = build_gell_mann_basis(d).unwrap();
            let p = construct_gsic(&b, max_feasible_t(&b).unwrap()).unwrap();
            let q = conjugate_gsic(&p);
            let j = brute_force_j(&isotropic(d, 0.0).unwrap(), &[p.operators(), q.operators()]).unwrap();
            assert!((j - 1.0 / (d * d) as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn shape_errors() {
        let b = build_gell_mann_basis(2).unwrap();
        let p = construct_gsic(&b, 0.0).unwrap();
        let rho = max_entangled(2).unwrap();
        assert!(brute_force_j(&rho, &[p.operators()]).is_err());
        assert!(brute_force_j(&rho, &[p.operators(), &p.operators()[..3]]).is_err());
        let b3 = build_gell_mann_basis(3).unwrap();
        let p3 = construct_gsic(&b3, 0.0).unwrap();
        assert!(brute_force_j(&rho, &[p.operators(), &p3.operators()[..4]]).is_err());
    }
}
