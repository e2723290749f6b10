//! Dense polynomials over a prime field F_p.
//!
//! Coefficients are stored constant term first. Every function returns a
//! trimmed vector (no trailing zero coefficients); the zero polynomial is
//! the empty vector.

pub(crate) fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_p(acc, base, p);
        }
        base = mul_mod_p(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse in F_p via Fermat. `a` must be nonzero mod p.
pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    pow_mod_p(a, p - 2, p)
}

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_p(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod_p(m[dm], p);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = mul_mod_p(r[dr], lead_inv, p);
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let t = mul_mod_p(factor, c, p);
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub fn pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    // normalize to monic
    if let Some(d) = degree(&x) {
        let inv = inv_mod_p(x[d], p);
        for c in x.iter_mut() {
            *c = mul_mod_p(*c, inv, p);
        }
    }
    x
}

/// Ben-Or irreducibility test: a polynomial f of degree k >= 1 over F_p is
/// irreducible iff gcd(x^(p^i) - x, f) = 1 for every i in 1..=k/2.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 0..k / 2 {
        h = pow_mod(&h, p, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `k` over F_p,
/// comparing coefficient vectors constant term first.
pub fn smallest_monic_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    loop {
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        // odometer over coeffs[0..k], last position fastest, so coeffs[0]
        // is the most significant key
        let mut i = k;
        loop {
            assert!(i > 0, "no monic irreducible of degree {k} over F_{p}");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}
