use std::collections::HashMap;

use super::DensityMatrix;
use crate::error::{require, Error, Result};
use crate::C64;

/// Block index of every basis label; the blocks must cover each label once.
fn block_of(rho: &DensityMatrix, partition: &[Vec<String>]) -> Result<Vec<usize>> {
    let mut owner: HashMap<&str, usize> = HashMap::new();
    for (b, block) in partition.iter().enumerate() {
        for label in block {
            require(rho.index_of(label).is_some(), || Error::Partition(format!("unknown label {label:?}")))?;
            if owner.insert(label.as_str(), b).is_some() {
                return Err(Error::Partition(format!("label {label:?} appears twice")));
            }
        }
    }
    rho.labels()
        .iter()
        .map(|l| owner.get(l.as_str()).copied().ok_or_else(|| Error::Partition(format!("label {l:?} not covered"))))
        .collect()
}

/// Frobenius norm of the entries of `rho` lying outside the diagonal blocks.
pub fn coherence_norm(rho: &DensityMatrix, partition: &[Vec<String>]) -> Result<f64> {
    let block = block_of(rho, partition)?;
    let e = rho.entries();
    let mut sum = 0.0;
    for j in 0..rho.dim() {
        for i in 0..rho.dim() {
            if block[i] != block[j] {
                sum += e[(i, j)].norm_sqr();
            }
        }
    }
    Ok(sum.sqrt())
}

/// Multiplies every off-block entry by `factor` ∈ [0, 1]; 0 is full dephasing.
pub fn dephase_blocks(rho: &DensityMatrix, partition: &[Vec<String>], factor: f64) -> Result<DensityMatrix> {
    require((0.0..=1.0).contains(&factor), || Error::Domain(format!("dephasing factor {factor} outside [0, 1]")))?;
    let block = block_of(rho, partition)?;
    let mut e = rho.entries().clone();
    for j in 0..rho.dim() {
        for i in 0..rho.dim() {
            if block[i] != block[j] {
                e[(i, j)] *= C64::from(factor);
            }
        }
    }
    DensityMatrix::new(rho.labels().to_vec(), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::StateVector;

    fn singletons(n: usize) -> Vec<Vec<String>> {
        (0..n).map(|i| vec![i.to_string()]).collect()
    }

    #[test]
    fn equal_superposition_singleton_blocks() {
        let s = StateVector::from_slice(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let rho = DensityMatrix::from_pure(&s);
        let c = coherence_norm(&rho, &singletons(2)).unwrap();
        assert!((c - 0.5 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn full_dephasing_removes_coherence() {
        let s = StateVector::from_slice(&[C64::new(1.0, 0.0), C64::new(0.3, 0.4), C64::new(0.0, -0.7)]).unwrap();
        let rho = DensityMatrix::from_pure(&s);
        let blocks = vec![vec!["0".to_string(), "2".to_string()], vec!["1".to_string()]];
        let d = dephase_blocks(&rho, &blocks, 0.0).unwrap();
        assert!(coherence_norm(&d, &blocks).unwrap() < 1e-12);
        // Coherence inside the {0, 2} block survives.
        assert!(d.entries()[(0, 2)].norm() > 0.1);
    }

    #[test]
    fn diagonal_matrix_has_no_coherence() {
        let rho = DensityMatrix::from_matrix(nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(0.25, 0.0),
            C64::new(0.75, 0.0),
        ])))
        .unwrap();
        assert_eq!(coherence_norm(&rho, &singletons(2)).unwrap(), 0.0);
    }

    #[test]
    fn partition_must_cover_labels() {
        let rho = DensityMatrix::from_pure(&StateVector::basis(3, 0).unwrap());
        let missing = vec![vec!["0".to_string()], vec!["1".to_string()]];
        assert!(matches!(coherence_norm(&rho, &missing), Err(Error::Partition(_))));
        let dup = vec![vec!["0".to_string(), "1".to_string()], vec!["1".to_string(), "2".to_string()]];
        assert!(matches!(coherence_norm(&rho, &dup), Err(Error::Partition(_))));
        let unknown = vec![vec!["0".to_string(), "1".to_string(), "2".to_string(), "x".to_string()]];
        assert!(matches!(coherence_norm(&rho, &unknown), Err(Error::Partition(_))));
    }
}
