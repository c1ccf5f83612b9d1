//! Möbius inversion and its inverse on a product of chains.
//!
//! Values are laid out in mixed radix with coordinate 0 most significant.
//! Differencing along every axis turns a multivariate CDF into point masses;
//! accumulating along every axis does the reverse. Both run in `O(n · len)`.

use crate::rational::Rational;

/// In place: `v[d] ← Σ_{A ⊆ N} (-1)^{|A|} v[d - 1_A]`, with out-of-range
/// predecessors treated as zero.
pub(crate) fn difference_in_place(values: &mut [Rational], radices: &[usize], strides: &[usize]) {
    for (&radix, &stride) in radices.iter().zip(strides) {
        for idx in (0..values.len()).rev() {
            if (idx / stride) % radix > 0 {
                let (lo, hi) = values.split_at_mut(idx);
                hi[0] -= &lo[idx - stride];
            }
        }
    }
}

/// In place: `v[d] ← Σ_{e ≤ d} v[e]`.
pub(crate) fn accumulate_in_place(values: &mut [Rational], radices: &[usize], strides: &[usize]) {
    for (&radix, &stride) in radices.iter().zip(strides) {
        for idx in 0..values.len() {
            if (idx / stride) % radix > 0 {
                let (lo, hi) = values.split_at_mut(idx);
                hi[0] += &lo[idx - stride];
            }
        }
    }
}

pub(crate) fn strides_for(radices: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; radices.len()];
    for i in (0..radices.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * radices[i + 1];
    }
    strides
}
