/// Kronecker symbol `(a | n)` for `n ≥ 1`.
///
/// Binary algorithm: strip factors of two from `n` using `(a | 2)`, then run
/// the Jacobi reciprocity loop.
pub fn kronecker(a: i64, n: u64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i8;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a | 2) = 1 if a ≡ ±1 (mod 8), −1 if a ≡ ±3 (mod 8)
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    // n is odd now; reduce a into [0, n) and run Jacobi
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
#[inline]
pub fn legendre(a: i64, p: u64) -> i8 {
    kronecker(a, p)
}
