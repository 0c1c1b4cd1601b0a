use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};

use super::{numeric_labels, DensityMatrix, StateVector};
use crate::error::{require, Error, Result};
use crate::{tolerances, C64};

/// Pure state of a two-part system, Σ c_nm |n⟩_A |m⟩_B.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    coefficients: DMatrix<C64>,
}

impl BipartiteState {
    /// `coefficients` is dimA × dimB and must have unit Frobenius norm.
    pub fn new(coefficients: DMatrix<C64>) -> Result<Self> {
        require(coefficients.nrows() > 0 && coefficients.ncols() > 0, || {
            Error::Shape("empty coefficient matrix".into())
        })?;
        let norm_sqr = coefficients.norm_squared();
        require((norm_sqr - 1.0).abs() <= tolerances::STATE_NORM, || {
            Error::InvalidState(format!("squared norm {norm_sqr} differs from 1"))
        })?;
        Ok(Self { coefficients })
    }

    /// |a⟩ ⊗ |b⟩.
    pub fn product(a: &StateVector, b: &StateVector) -> Self {
        Self { coefficients: a.amplitudes() * b.amplitudes().transpose() }
    }

    pub fn dim_a(&self) -> usize {
        self.coefficients.nrows()
    }

    pub fn dim_b(&self) -> usize {
        self.coefficients.ncols()
    }

    pub fn coefficients(&self) -> &DMatrix<C64> {
        &self.coefficients
    }

    /// The state as a vector in A⊗B, index n·dimB + m.
    pub fn to_vector(&self) -> DVector<C64> {
        let (da, db) = (self.dim_a(), self.dim_b());
        DVector::from_fn(da * db, |k, _| self.coefficients[(k / db, k % db)])
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        let v = self.to_vector();
        DensityMatrix::from_matrix(&v * v.adjoint()).expect("pure state projector is a valid density matrix")
    }

    /// The reduced state of one subsystem, ρ_A = c c† or ρ_B = (cᵀ)(cᵀ)†.
    pub fn reduced(&self, keep: Subsystem) -> DensityMatrix {
        let c = &self.coefficients;
        let m = match keep {
            Subsystem::A => c * c.adjoint(),
            Subsystem::B => c.transpose() * c.conjugate(),
        };
        DensityMatrix::from_matrix(m).expect("reduced state of a normalized pure state")
    }

    /// The same state with the roles of A and B exchanged.
    pub fn swapped(&self) -> Self {
        Self { coefficients: self.coefficients.transpose() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Σ √p_n |left_n⟩|right_n⟩ with weights in descending order.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub weights: Vec<f64>,
    pub left: Vec<StateVector>,
    pub right: Vec<StateVector>,
    pub dim_a: usize,
    pub dim_b: usize,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    /// Coefficient matrix Σ √p_n left_n right_nᵀ.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let mut c = DMatrix::zeros(self.dim_a, self.dim_b);
        for ((p, l), r) in self.weights.iter().zip(&self.left).zip(&self.right) {
            c += l.amplitudes() * r.amplitudes().transpose() * C64::from(p.sqrt());
        }
        c
    }
}

/// Schmidt decomposition via the singular value decomposition of c_nm.
///
/// Each left vector's first non-negligible amplitude is made real and
/// positive, with the compensating phase moved onto the right vector.
/// Degenerate weights are ordered by their left vectors, compared
/// lexicographically on (re, im) of successive amplitudes, larger first.
pub fn schmidt_decompose(state: &BipartiteState) -> Result<SchmidtDecomposition> {
    let c = state.coefficients();
    let norm_sqr = c.norm_squared();
    require((norm_sqr - 1.0).abs() <= tolerances::STATE_NORM, || {
        Error::InvalidState(format!("squared norm {norm_sqr} differs from 1"))
    })?;
    let (da, db) = (state.dim_a(), state.dim_b());

    let svd = c.clone().svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");

    let mut terms: Vec<(f64, DVector<C64>, DVector<C64>)> = svd
        .singular_values
        .iter()
        .enumerate()
        .map(|(k, s)| (s * s, u.column(k).into_owned(), v_t.row(k).transpose()))
        .filter(|(p, _, _)| *p > tolerances::SCHMIDT_WEIGHT_CUTOFF)
        .map(|(p, mut l, mut r)| {
            if let Some(first) = l.iter().find(|z| z.norm() > tolerances::PHASE_ZERO) {
                let phase = first / first.norm();
                l *= phase.conj();
                r *= phase;
            }
            (p, l, r)
        })
        .collect();

    terms.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut start = 0;
    while start < terms.len() {
        let mut end = start + 1;
        while end < terms.len() && (terms[end - 1].0 - terms[end].0).abs() < tolerances::SCHMIDT_DEGENERACY {
            end += 1;
        }
        terms[start..end].sort_by(|a, b| lexicographic_desc(&a.1, &b.1));
        start = end;
    }

    let total: f64 = terms.iter().map(|t| t.0).sum();
    let mut weights = Vec::with_capacity(terms.len());
    let mut left = Vec::with_capacity(terms.len());
    let mut right = Vec::with_capacity(terms.len());
    for (p, l, r) in terms {
        weights.push(p / total);
        left.push(StateVector::normalized(l)?.with_labels(numeric_labels(da))?);
        right.push(StateVector::normalized(r)?.with_labels(numeric_labels(db))?);
    }
    Ok(SchmidtDecomposition { weights, left, right, dim_a: da, dim_b: db })
}

fn lexicographic_desc(a: &DVector<C64>, b: &DVector<C64>) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let ord = y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Reduced density matrix of one factor of A⊗B.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem, dims: (usize, usize)) -> Result<DensityMatrix> {
    let (da, db) = dims;
    require(da > 0 && db > 0 && rho.dim() == da * db, || {
        Error::Shape(format!("dimension {} is not {da}·{db}", rho.dim()))
    })?;
    let e = rho.entries();
    let reduced = match keep {
        Subsystem::A => DMatrix::from_fn(da, da, |n, n2| (0..db).map(|m| e[(n * db + m, n2 * db + m)]).sum()),
        Subsystem::B => DMatrix::from_fn(db, db, |m, m2| (0..da).map(|n| e[(n * db + m, n * db + m2)]).sum()),
    };
    DensityMatrix::from_matrix(reduced)
}

/// −Σ p ln p in nats, with 0·ln 0 = 0.
pub fn entanglement_entropy(sd: &SchmidtDecomposition) -> f64 {
    -sd.weights.iter().filter(|&&p| p > 0.0).map(|&p| p * p.ln()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::random;
    use rand::{rngs::StdRng, SeedableRng};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell() -> BipartiteState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        BipartiteState::new(DMatrix::from_row_slice(2, 2, &[c(h), c(0.0), c(0.0), c(h)])).unwrap()
    }

    #[test]
    fn bell_state_has_two_equal_weights() {
        let sd = schmidt_decompose(&bell()).unwrap();
        assert_eq!(sd.rank(), 2);
        assert!((sd.weights[0] - 0.5).abs() < 1e-14);
        assert!((sd.weights[1] - 0.5).abs() < 1e-14);
        assert!((entanglement_entropy(&sd) - std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn product_state_has_single_term() {
        let s = BipartiteState::new(DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)])).unwrap();
        let sd = schmidt_decompose(&s).unwrap();
        assert_eq!(sd.weights, vec![1.0]);
        assert_eq!(entanglement_entropy(&sd), 0.0);
    }

    #[test]
    fn degenerate_weights_ordered_by_left_vector() {
        let sd = schmidt_decompose(&bell()).unwrap();
        // |0⟩ = (1, 0) sorts before |1⟩ = (0, 1).
        assert!((sd.left[0].amplitudes()[0] - c(1.0)).norm() < 1e-12);
        assert!((sd.left[1].amplitudes()[1] - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn phase_convention_first_left_amplitude_real_positive() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let s = random::bipartite_state(&mut rng, 3, 4);
            let sd = schmidt_decompose(&s).unwrap();
            for l in &sd.left {
                let first = l.amplitudes().iter().find(|z| z.norm() > 1e-12).unwrap();
                assert!(first.im.abs() < 1e-14 && first.re > 0.0);
            }
            assert!((sd.reconstruct() - s.coefficients()).norm() < 1e-10);
        }
    }

    #[test]
    fn unnormalized_input_rejected() {
        let m = DMatrix::from_row_slice(1, 2, &[c(1.0), c(1.0)]);
        assert!(matches!(BipartiteState::new(m), Err(Error::InvalidState(_))));
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let rho = bell().density_matrix();
        let ra = partial_trace(&rho, Subsystem::A, (2, 2)).unwrap();
        let half = DMatrix::<C64>::identity(2, 2) * c(0.5);
        assert!((ra.entries() - half).norm() < 1e-14);
    }

    #[test]
    fn partial_trace_of_product_keeps_factor() {
        let zero = StateVector::basis(2, 0).unwrap();
        let rho = BipartiteState::product(&zero, &zero).density_matrix();
        let rb = partial_trace(&rho, Subsystem::B, (2, 2)).unwrap();
        assert!((rb.entries()[(0, 0)] - c(1.0)).norm() < 1e-14);
        assert!(rb.entries()[(1, 1)].norm() < 1e-14);
    }

    #[test]
    fn partial_trace_shape_error() {
        let rho = bell().density_matrix();
        assert!(matches!(partial_trace(&rho, Subsystem::A, (3, 2)), Err(Error::Shape(_))));
    }
}
