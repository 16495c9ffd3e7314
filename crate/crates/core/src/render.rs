//! Decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

pub fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn scaled(x: &BigRational, decimals: u32) -> BigRational {
    x * BigRational::from_integer(BigInt::from(10u32).pow(decimals))
}

fn place(units: BigInt, decimals: u32) -> String {
    let negative = units.is_negative();
    let digits = units.abs().to_string();
    let body = if decimals == 0 {
        digits
    } else {
        let width = decimals as usize + 1;
        let padded = format!("{digits:0>width$}");
        let (whole, frac) = padded.split_at(padded.len() - decimals as usize);
        format!("{whole}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Round to `decimals` places, ties away from zero.
pub fn round_half_up(x: &BigRational, decimals: u32) -> String {
    let s = scaled(x, decimals);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let units = if s.is_negative() {
        -(-s + half).floor().to_integer()
    } else {
        (s + half).floor().to_integer()
    };
    place(units, decimals)
}

/// Cut off after `decimals` places, towards zero.
pub fn truncate(x: &BigRational, decimals: u32) -> String {
    place(scaled(x, decimals).trunc().to_integer(), decimals)
}

/// `100 * num / den` to one decimal, rounding half up; `0.0` when `den` is 0.
pub fn percent_1dp(num: u64, den: u64) -> String {
    if den == 0 {
        return "0.0".to_string();
    }
    round_half_up(&(ratio(num, den) * int(100)), 1)
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn exact(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_keeps_1_16() {
        assert_eq!(truncate(&ratio(7, 6), 2), "1.16");
        assert_eq!(round_half_up(&ratio(7, 6), 2), "1.17");
        assert_eq!(truncate(&ratio(10, 8), 2), "1.25");
        assert_eq!(truncate(&ratio(1, 3), 2), "0.33");
        assert_eq!(truncate(&int(1), 2), "1.00");
        assert_eq!(truncate(&ratio(1, 200), 2), "0.00");
    }

    #[test]
    fn half_up() {
        assert_eq!(round_half_up(&ratio(166, 3), 0), "55");
        assert_eq!(round_half_up(&ratio(152, 3), 0), "51");
        assert_eq!(round_half_up(&ratio(1, 2), 0), "1");
        assert_eq!(round_half_up(&ratio(5, 100), 1), "0.1");
        assert_eq!(round_half_up(&-ratio(1, 2), 0), "-1");
    }

    #[test]
    fn percentages() {
        assert_eq!(percent_1dp(725, 1001), "72.4");
        assert_eq!(percent_1dp(114, 1001), "11.4");
        assert_eq!(percent_1dp(162, 1001), "16.2");
        assert_eq!(percent_1dp(0, 0), "0.0");
        assert_eq!(percent_1dp(0, 5), "0.0");
    }

    #[test]
    fn exact_form() {
        assert_eq!(exact(&ratio(10, 8)), "5/4");
        assert_eq!(exact(&int(3)), "3");
        assert_eq!(exact(&int(0)), "0");
    }
}
