//! Dense arithmetic in `Z_n[Y] / (f)` for a monic `f`, on bare coefficient vectors.
//!
//! Both the Galois ring (`n = p^s`) and its residue field (`n = p`) run on this.

use crate::arith::{checked_pow, pow_mod, prime_factors};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Quotient {
    pub n: u64,
    /// Monic, low-to-high, length `m + 1`.
    pub modulus: Vec<u64>,
}

impl Quotient {
    pub fn new(n: u64, modulus: Vec<u64>) -> Self {
        debug_assert_eq!(*modulus.last().unwrap(), 1 % n);
        Quotient { n, modulus }
    }

    pub fn m(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.m()]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1 % self.n;
        v
    }

    /// The class of `Y`.
    pub fn gen(&self) -> Vec<u64> {
        if self.m() == 1 {
            // Y = -f_0
            return vec![(self.n - self.modulus[0] % self.n) % self.n];
        }
        let mut v = self.zero();
        v[1] = 1;
        v
    }

    pub fn constant(&self, c: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = c % self.n;
        v
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.n).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + self.n - y) % self.n)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.n - x) % self.n).collect()
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        let c = c % self.n;
        a.iter().map(|x| x * c % self.n).collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Reduce an arbitrary-length polynomial modulo `f`.
    pub fn reduce(&self, mut wide: Vec<u64>) -> Vec<u64> {
        let m = self.m();
        let n = self.n;
        for x in wide.iter_mut() {
            *x %= n;
        }
        if wide.len() > m {
            for d in (m..wide.len()).rev() {
                let c = wide[d];
                if c == 0 {
                    continue;
                }
                wide[d] = 0;
                for i in 0..m {
                    let t = c * self.modulus[i] % n;
                    wide[d - m + i] = (wide[d - m + i] + n - t) % n;
                }
            }
        }
        wide.resize(m, 0);
        wide
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.m();
        let n = self.n;
        let mut wide = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                wide[i + j] = (wide[i + j] + x * y % n) % n;
            }
        }
        self.reduce(wide)
    }

    pub fn pow(&self, a: &[u64], mut exp: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Evaluate an integer polynomial (low-to-high) at `x`.
    pub fn eval_int_poly(&self, poly: &[u64], x: &[u64]) -> Vec<u64> {
        let mut acc = self.zero();
        for &c in poly.iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = (acc[0] + c) % self.n;
        }
        acc
    }
}

/// Is the monic `f` (coefficients mod `p`) primitive over `F_p`?
///
/// Tested through the multiplicative order of `Y` in `F_p[Y]/(f)`: it equals
/// `p^m - 1` only when `f` is irreducible and `Y` generates the unit group.
pub(crate) fn is_primitive_mod_p(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    match checked_pow(p, m as u32) {
        Some(v) if m > 0 => primitive_with_factors(f, p, v - 1, &prime_factors(v - 1)),
        _ => false,
    }
}

fn primitive_with_factors(f: &[u64], p: u64, order: u64, factors: &[u64]) -> bool {
    let m = f.len() - 1;
    if f[m] % p != 1 % p || f[0] % p == 0 {
        return false;
    }
    let q = Quotient::new(p, f.iter().map(|c| c % p).collect());
    let y = q.gen();
    let one = q.one();
    if q.pow(&y, order) != one {
        return false;
    }
    factors.iter().all(|&r| q.pow(&y, order / r) != one)
}

/// Lexicographically smallest (by low-to-high coefficient vector) monic primitive
/// polynomial of degree `m` over `F_p`.
pub(crate) fn smallest_primitive(p: u64, m: usize) -> Option<Vec<u64>> {
    let count = checked_pow(p, m as u32)?;
    let factors = prime_factors(count - 1);
    let low = count / p;
    // c_0 is the most significant digit so that the scan is lexicographic. The
    // norm (-1)^m c_0 of a primitive root must generate F_p^*, which rules out
    // whole blocks of candidates.
    for c0 in 1..p {
        let norm = if m % 2 == 0 { c0 } else { p - c0 };
        if !generates_units_mod_p(norm, p) {
            continue;
        }
        for idx in c0 * low..(c0 + 1) * low {
            let mut f = vec![0u64; m + 1];
            let mut rest = idx;
            for j in (0..m).rev() {
                f[j] = rest % p;
                rest /= p;
            }
            f[m] = 1;
            if primitive_with_factors(&f, p, count - 1, &factors) {
                return Some(f);
            }
        }
    }
    None
}

fn generates_units_mod_p(a: u64, p: u64) -> bool {
    if p == 2 {
        return a == 1;
    }
    prime_factors(p - 1)
        .into_iter()
        .all(|r| pow_mod(a, (p - 1) / r, p) != 1)
}

/// Hensel (Teichmüller) lift of a primitive `fbar` to `Z_{p^s}`: the minimal
/// polynomial of the Teichmüller lift of the class of `Y`.
pub(crate) fn hensel_lift(fbar: &[u64], p: u64, s: u32) -> Vec<u64> {
    let n = checked_pow(p, s).expect("p^s fits in u64");
    if s == 1 {
        return fbar.to_vec();
    }
    let m = fbar.len() - 1;
    let q = Quotient::new(n, fbar.to_vec());
    let field_order = checked_pow(p, m as u32).expect("p^m fits in u64");
    let mut xi = q.gen();
    for _ in 1..s {
        xi = q.pow(&xi, field_order);
    }
    // h(Y) = prod_j (Y - xi^{p^j}), built with coefficients in the quotient.
    let mut poly: Vec<Vec<u64>> = vec![q.one()];
    let mut conj = xi;
    for _ in 0..m {
        let mut next = vec![q.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = q.add(&next[i + 1], c);
            let t = q.mul(c, &conj);
            next[i] = q.sub(&next[i], &t);
        }
        poly = next;
        conj = q.pow(&conj, p);
    }
    poly.iter()
        .map(|c| {
            debug_assert!(c[1..].iter().all(|&x| x == 0), "lift coefficient not scalar");
            c[0]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_primitive_polynomials() {
        assert!(is_primitive_mod_p(&[1, 1, 0, 0, 1], 2));
        assert!(is_primitive_mod_p(&[1, 1, 0, 0, 0, 0, 1, 1, 1], 2));
        assert!(is_primitive_mod_p(&[3, 3, 0, 1], 5));
        // Y^4 + Y^3 + Y^2 + Y + 1 is irreducible but Y has order 5.
        assert!(!is_primitive_mod_p(&[1, 1, 1, 1, 1], 2));
        // Y^2 + 1 = (Y + 1)^2 over F_2.
        assert!(!is_primitive_mod_p(&[1, 0, 1], 2));
        assert!(is_primitive_mod_p(&[1, 1], 2));
    }

    #[test]
    fn smallest_primitive_is_lexicographic() {
        assert_eq!(smallest_primitive(2, 1), Some(vec![1, 1]));
        assert_eq!(smallest_primitive(2, 4), Some(vec![1, 0, 0, 1, 1]));
        assert_eq!(smallest_primitive(3, 1), Some(vec![1, 1]));
    }

    #[test]
    fn hensel_lift_of_y4_y_1_over_z4() {
        // Classic Galois-ring lift: Y^4 + 2Y^2 + 3Y + 1.
        assert_eq!(hensel_lift(&[1, 1, 0, 0, 1], 2, 2), vec![1, 3, 2, 0, 1]);
    }

    #[test]
    fn hensel_lift_root_is_a_root_of_unity() {
        let h = hensel_lift(&[3, 3, 0, 1], 5, 2);
        let q = Quotient::new(25, h);
        let y = q.gen();
        assert_eq!(q.pow(&y, 124), q.one());
    }
}
