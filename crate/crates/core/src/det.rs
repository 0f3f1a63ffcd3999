//! Exact determinants of small polynomial matrices.

use crate::ring::packed::Semiring;
use crate::ring::Poly;

/// Determinant by Laplace expansion memoized over the set of used columns:
/// `O(n 2ⁿ)` multiplications, which beats elimination for the sparse,
/// structured matrices that occur here (n ≤ 8).
pub fn det(m: &[Vec<Poly>]) -> Poly {
    det_with(m, |p| -p)
}

/// [`det`] over any coefficient ring; `negate` supplies the additive inverse.
pub fn det_with<W: Semiring>(m: &[Vec<W>], negate: impl Fn(&W) -> W) -> W {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    assert!(n <= 20, "determinant size {n} is out of range");
    if n == 0 {
        return W::one();
    }
    let mut partial: Vec<W> = vec![W::zero(); 1 << n];
    partial[0] = W::one();
    for mask in 0usize..(1 << n) {
        if partial[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        let cur = std::mem::replace(&mut partial[mask], W::zero());
        for (col, entry) in m[row].iter().enumerate() {
            if mask & (1 << col) != 0 || entry.is_zero() {
                continue;
            }
            let term = cur.mul(entry);
            // each previously used column to the right is one inversion
            if (mask >> (col + 1)).count_ones() % 2 == 1 {
                partial[mask | (1 << col)].add_assign(&negate(&term));
            } else {
                partial[mask | (1 << col)].add_assign(&term);
            }
        }
        partial[mask] = cur;
    }
    partial.pop().unwrap()
}
