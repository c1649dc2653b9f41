//! Right kernels of integer matrices reduced modulo 2.

use crate::matrix::IntegerMatrix;

/// A vector over GF(2).
pub type Gf2Vector = Vec<bool>;

/// Basis of `{k : M k ≡ 0 (mod 2)}`, one vector per free column of the
/// reduced row echelon form of `M mod 2`. Works for rectangular `M` too.
pub fn gf2_kernel(m: &IntegerMatrix) -> Vec<Gf2Vector> {
    let mut rows = m.mod2();
    let ncols = m.cols();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= *b);
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    (0..ncols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut v = vec![false; ncols];
            v[free] = true;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = rows[r][free];
            }
            v
        })
        .collect()
}

/// All `2^d` elements of the span of `basis`, in binary-counter order
/// starting with the zero vector.
pub fn span(basis: &[Gf2Vector], dim: usize) -> Vec<Gf2Vector> {
    (0..1usize << basis.len())
        .map(|mask| {
            let mut v = vec![false; dim];
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v.iter_mut().zip(b).for_each(|(a, x)| *a ^= *x);
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn in_kernel(m: &IntegerMatrix, v: &[bool]) -> bool {
        (0..m.rows()).all(|i| {
            let s: BigInt = (0..m.cols()).filter(|&j| v[j]).map(|j| m[(i, j)].clone()).sum();
            num_integer::Integer::is_even(&s)
        })
    }

    /// Brute-force kernel by enumerating all 2^n vectors.
    fn enumerate_kernel(m: &IntegerMatrix) -> Vec<Gf2Vector> {
        let n = m.cols();
        (0..1usize << n)
            .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|v| in_kernel(m, v))
            .collect()
    }

    #[test]
    fn kernel_of_k2_is_trivial() {
        let k2 = m(&[vec![0, 1], vec![1, 0]]);
        assert!(gf2_kernel(&k2).is_empty());
        assert_eq!(enumerate_kernel(&k2).len(), 1);
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let z = IntegerMatrix::zeros(2, 2);
        let basis = gf2_kernel(&z);
        assert_eq!(basis.len(), 2);
        assert_eq!(span(&basis, 2).len(), 4);
    }

    #[test]
    fn kernel_of_diag_zero_k2() {
        let a = m(&[vec![0, 0, 0], vec![0, -2, -1], vec![0, -1, -2]]);
        assert_eq!(gf2_kernel(&a), vec![vec![true, false, false]]);
        assert_eq!(enumerate_kernel(&a).len(), 2);
    }

    proptest! {
        #[test]
        fn kernel_matches_enumeration(
            n in 1usize..=5,
            entries in prop::collection::vec(-3i64..=3, 25),
        ) {
            let mat = IntegerMatrix::from_fn(n, n, |i, j| BigInt::from(entries[i * 5 + j]));
            let basis = gf2_kernel(&mat);
            let mut spanned = span(&basis, n);
            spanned.sort();
            spanned.dedup();
            // basis is independent iff its span has exactly 2^d distinct elements
            prop_assert_eq!(spanned.len(), 1usize << basis.len());
            let mut brute = enumerate_kernel(&mat);
            brute.sort();
            prop_assert_eq!(spanned, brute);
        }
    }
}
