//! Truncated Taylor series in normalized form `c_j = f^(j)(x) / j!`.

pub(crate) fn derivative(s: &[f64]) -> Vec<f64> {
    s.iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * j as f64)
        .collect()
}

pub(crate) fn mul_truncated(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    (0..len)
        .map(|j| {
            (0..=j)
                .filter_map(|i| Some(a.get(i)? * b.get(j - i)?))
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        // (x^2)' at x = 2 through series of x and x.
        let x = [2.0, 1.0, 0.0];
        let sq = mul_truncated(&x, &x, 3);
        assert_eq!(sq, vec![4.0, 4.0, 1.0]);
        assert_eq!(derivative(&sq), vec![4.0, 2.0]);
    }
}
