//! Small integer helpers: Möbius function, divisors, prime powers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Möbius function; `mobius(0)` is not defined and panics.
pub fn mobius(r: u64) -> i64 {
    assert!(r >= 1, "mobius is defined on positive integers");
    let mut n = r;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors in increasing order.
pub fn divisors(r: u64) -> Vec<u64> {
    (1..=r).filter(|d| r % d == 0).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `Some(i)` when `r = p^i`, including `r = 1`.
pub fn p_power_exponent(r: u64, p: u64) -> Option<u32> {
    if r == 0 {
        return None;
    }
    let mut n = r;
    let mut i = 0;
    while n % p == 0 {
        n /= p;
        i += 1;
    }
    (n == 1).then_some(i)
}

/// Splits `r = p^m k` with `p ∤ k`.
pub fn split_p_part(r: u64, p: u64) -> (u32, u64) {
    let mut k = r;
    let mut m = 0;
    while k % p == 0 {
        k /= p;
        m += 1;
    }
    (m, k)
}

/// Number of Lyndon words of length `d` over `a` letters.
pub fn witt_number(a: u64, d: u64) -> u64 {
    let total: i128 = divisors(d)
        .into_iter()
        .map(|e| mobius(e) as i128 * (a as i128).pow((d / e) as u32))
        .sum();
    (total / d as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(7), -1);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(p_power_exponent(1, 2), Some(0));
        assert_eq!(p_power_exponent(8, 2), Some(3));
        assert_eq!(p_power_exponent(6, 2), None);
        assert_eq!(split_p_part(12, 2), (2, 3));
    }

    #[test]
    fn witt_numbers_on_two_letters() {
        let got: Vec<u64> = (1..=6).map(|d| witt_number(2, d)).collect();
        assert_eq!(got, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(witt_number(3, 4), 18);
    }
}
