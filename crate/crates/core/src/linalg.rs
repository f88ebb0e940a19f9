//! Exact Gaussian elimination over a finite field.

use alloc::vec::Vec;

use crate::finite_field::Field;

/// Rank of the span of `vectors`. All vectors must have the same length.
pub fn rank<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.len();
    assert!(vectors.iter().all(|v| v.len() == cols), "vectors must have equal length");
    let mut rows: Vec<Vec<F::Elem>> = vectors.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank][col..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let t = field.mul(&c, y);
                field.sub_assign(x, &t);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::PrimeField;
    use alloc::vec;

    #[test]
    fn rank_examples() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(rank(&f, &[]), 0);
        let basis: Vec<Vec<u64>> = (0..5).map(|i| (0..5).map(|j| (i == j) as u64).collect()).collect();
        assert_eq!(rank(&f, &basis), 5);
        let v = vec![1, 2, 0, 1];
        assert_eq!(rank(&f, &[v.clone(), v]), 1);
        // (1,1) + (1,2) = (2,0), so three vectors in F_3^2 of rank 2
        assert_eq!(rank(&f, &[vec![1, 1], vec![1, 2], vec![2, 0]]), 2);
        assert_eq!(rank(&f, &[vec![0, 0, 0]]), 0);
    }
}
