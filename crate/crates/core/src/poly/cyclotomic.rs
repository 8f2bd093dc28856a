use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer coefficients (constant term first) of the m-th cyclotomic
/// polynomial, from `t^m − 1 = ∏_{d | m} Φ_d(t)`.
pub fn cyclotomic_coeffs(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = exact_div(&num, &cyclotomic_coeffs(d));
    }
    num
}

/// Exact division by a monic divisor.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(m: u32) -> Vec<i64> {
        cyclotomic_coeffs(m).iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn known_values() {
        assert_eq!(small(1), vec![-1, 1]);
        assert_eq!(small(2), vec![1, 1]);
        assert_eq!(small(3), vec![1, 1, 1]);
        assert_eq!(small(4), vec![1, 0, 1]);
        assert_eq!(small(6), vec![1, -1, 1]);
        assert_eq!(small(12), vec![1, 0, -1, 0, 1]);
    }
}
