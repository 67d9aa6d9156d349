//! Stable number formatting for machine output.

use serde::Serializer;

/// Significant digits in printed floats.
pub const SIG_DIGITS: usize = 15;

/// `x` rounded to 15 significant digits, plain decimal notation for
/// moderate exponents, trailing zeros trimmed.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    if !(-7..21).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        };
    }
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let int_len = exp as usize + 1;
        if digits.len() <= int_len {
            format!("{}{}", digits, "0".repeat(int_len - digits.len()))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    };
    format!("{sign}{body}")
}

pub(crate) fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_f64(*x))
}

pub(crate) fn ser_f64_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| fmt_f64(*x)))
}

pub(crate) fn ser_indexed<S: Serializer>(xs: &[(usize, f64)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|(k, x)| (k, fmt_f64(*x))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(fmt_f64(0.9), "0.9");
        assert_eq!(fmt_f64(0.25), "0.25");
        assert_eq!(fmt_f64(-1.5), "-1.5");
        assert_eq!(fmt_f64(24.0), "24");
        assert_eq!(fmt_f64(1e-3), "0.001");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt_f64(0.8838383838383838), "0.883838383838384");
        assert_eq!(fmt_f64(2.5e-12), "2.5e-12");
        assert_eq!(fmt_f64(0.9999999), "0.9999999");
        assert_eq!(fmt_f64(1e25), "1e25");
    }
}
