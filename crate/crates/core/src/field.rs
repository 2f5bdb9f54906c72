//! Exact arithmetic and the quadratic character over GF(q), q a prime power.
//!
//! Elements are indexed 0..q by the base-p digit expansion of their
//! coefficient vectors (constant term first), so index 0 is the zero element
//! and index 1 the one element. For extension fields the modulus is the
//! lexicographically smallest monic irreducible polynomial of the right
//! degree, which makes every construction downstream reproducible bit for
//! bit.

use crate::error::{Error, Result};

/// Largest field order `FiniteField::new` accepts by default.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 14;

/// Orders up to this build full q-by-q add/mul tables; larger fields fall
/// back to on-the-fly polynomial arithmetic with identical results.
const TABLE_LIMIT: u64 = 2048;

/// A factored prime power q = p^e.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub q: u64,
    pub p: u64,
    pub e: u32,
}

impl PrimePower {
    pub fn is_odd(&self) -> bool {
        self.p != 2
    }
}

/// Factor q as p^e with p prime, or report that q is not a prime power.
pub fn factor_prime_power(q: u64) -> Result<PrimePower> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = q;
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut n = q;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    if n != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok(PrimePower { q, p, e })
}

/// An element of a finite field, identified by its canonical index.
///
/// The owning field is tracked by order; `FiniteField::new` is deterministic,
/// so two fields of equal order are interchangeable.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    index: u32,
    q: u32,
}

impl FieldElement {
    pub fn index(&self) -> u64 {
        self.index as u64
    }

    pub fn field_order(&self) -> u64 {
        self.q as u64
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }
}

/// GF(q) with precomputed negation, inversion, and quadratic-character
/// tables; add/mul tables are kept for small orders.
pub struct FiniteField {
    order: PrimePower,
    /// Modulus coefficients, constant term first, including the leading 1.
    /// For prime fields this is `x`, i.e. `[0, 1]`.
    modulus: Vec<u64>,
    add_tab: Option<Vec<u16>>,
    mul_tab: Option<Vec<u16>>,
    neg_tab: Vec<u16>,
    inv_tab: Vec<u16>,
    /// chi_tab[i] in {-1, 0, +1}; present only for odd q.
    chi_tab: Option<Vec<i8>>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteField(q = {}, modulus = {:?})", self.order.q, self.modulus)
    }
}

impl FiniteField {
    /// Build GF(q) with the default order cap.
    pub fn new(q: u64) -> Result<Self> {
        Self::with_cap(q, DEFAULT_FIELD_CAP)
    }

    /// Build GF(q), refusing orders above `cap`.
    pub fn with_cap(q: u64, cap: u64) -> Result<Self> {
        let order = factor_prime_power(q)?;
        if q > cap {
            return Err(Error::SizeCapExceeded { entries: q, cap });
        }
        let modulus = if order.e == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(order.p, order.e)
        };

        let mut field = FiniteField {
            order,
            modulus,
            add_tab: None,
            mul_tab: None,
            neg_tab: Vec::new(),
            inv_tab: Vec::new(),
            chi_tab: None,
        };
        let n = q as usize;

        if q <= TABLE_LIMIT {
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..=a {
                    let s = field.add_raw(a, b) as u16;
                    let m = field.mul_raw(a, b) as u16;
                    add[a * n + b] = s;
                    add[b * n + a] = s;
                    mul[a * n + b] = m;
                    mul[b * n + a] = m;
                }
            }
            field.add_tab = Some(add);
            field.mul_tab = Some(mul);
        }

        field.neg_tab = (0..n).map(|a| field.neg_raw(a) as u16).collect();
        // inv(a) = a^(q-2); slot 0 is a sentinel, inv(0) is rejected at the API.
        field.inv_tab = (0..n)
            .map(|a| if a == 0 { 0 } else { field.pow_idx(a, q - 2) as u16 })
            .collect();

        if order.is_odd() {
            field.chi_tab = Some(field.build_chi()?);
        }
        Ok(field)
    }

    /// chi by exponentiation, cross-checked against brute-force square
    /// enumeration so the character can be trusted downstream.
    fn build_chi(&self) -> Result<Vec<i8>> {
        let q = self.order.q;
        let n = q as usize;
        let minus_one = self.neg_tab[1] as usize;
        let mut chi = vec![0i8; n];
        for a in 1..n {
            let t = self.pow_idx(a, (q - 1) / 2);
            chi[a] = if t == 1 {
                1
            } else if t == minus_one {
                -1
            } else {
                return Err(Error::PropertyCheck(format!(
                    "chi exponentiation landed outside {{1, -1}} in GF({q})"
                )));
            };
        }
        let mut is_square = vec![false; n];
        for a in 0..n {
            is_square[self.mul_idx(a, a)] = true;
        }
        for a in 1..n {
            let expect = if is_square[a] { 1 } else { -1 };
            if chi[a] != expect {
                return Err(Error::PropertyCheck(format!(
                    "chi({a}) = {} disagrees with square enumeration in GF({q})",
                    chi[a]
                )));
            }
        }
        Ok(chi)
    }

    pub fn order(&self) -> u64 {
        self.order.q
    }

    pub fn characteristic(&self) -> u64 {
        self.order.p
    }

    pub fn degree(&self) -> u32 {
        self.order.e
    }

    pub fn prime_power(&self) -> PrimePower {
        self.order
    }

    /// Modulus coefficients, constant term first, leading coefficient included.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.order.q {
            return Err(Error::ConditionViolated(format!(
                "element index {index} out of range for GF({})",
                self.order.q
            )));
        }
        Ok(self.wrap(index as usize))
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order.q as usize).map(|i| self.wrap(i))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.own(a)?;
        self.own(b)?;
        Ok(self.wrap(self.add_idx(a.index as usize, b.index as usize)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.own(a)?;
        self.own(b)?;
        let nb = self.neg_tab[b.index as usize] as usize;
        Ok(self.wrap(self.add_idx(a.index as usize, nb)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.own(a)?;
        self.own(b)?;
        Ok(self.wrap(self.mul_idx(a.index as usize, b.index as usize)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        self.own(a)?;
        Ok(self.wrap(self.neg_tab[a.index as usize] as usize))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.own(a)?;
        if a.index == 0 {
            return Err(Error::DivisionByZero(self.order.q));
        }
        Ok(self.wrap(self.inv_tab[a.index as usize] as usize))
    }

    /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
    pub fn chi(&self, x: FieldElement) -> Result<i8> {
        self.own(x)?;
        match &self.chi_tab {
            Some(tab) => Ok(tab[x.index as usize]),
            None => Err(Error::EvenCharacteristic(self.order.q)),
        }
    }

    pub(crate) fn chi_idx(&self, idx: usize) -> Result<i8> {
        match &self.chi_tab {
            Some(tab) => Ok(tab[idx]),
            None => Err(Error::EvenCharacteristic(self.order.q)),
        }
    }

    pub(crate) fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_tab[b] as usize)
    }

    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        match &self.add_tab {
            Some(tab) => tab[a * self.order.q as usize + b] as usize,
            None => self.add_raw(a, b),
        }
    }

    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        match &self.mul_tab {
            Some(tab) => tab[a * self.order.q as usize + b] as usize,
            None => self.mul_raw(a, b),
        }
    }

    fn wrap(&self, index: usize) -> FieldElement {
        FieldElement {
            index: index as u32,
            q: self.order.q as u32,
        }
    }

    fn own(&self, x: FieldElement) -> Result<()> {
        if x.q as u64 != self.order.q {
            return Err(Error::FieldMismatch(self.order.q, x.q as u64));
        }
        Ok(())
    }

    fn pow_idx(&self, base: usize, mut exp: u64) -> usize {
        let mut acc = 1usize;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_idx(acc, b);
            }
            b = self.mul_idx(b, b);
            exp >>= 1;
        }
        acc
    }

    fn add_raw(&self, a: usize, b: usize) -> usize {
        let p = self.order.p;
        if self.order.e == 1 {
            return ((a as u64 + b as u64) % p) as usize;
        }
        let mut out = 0u64;
        let mut scale = 1u64;
        let (mut a, mut b) = (a as u64, b as u64);
        for _ in 0..self.order.e {
            out += ((a + b) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out as usize
    }

    fn neg_raw(&self, a: usize) -> usize {
        let p = self.order.p;
        if self.order.e == 1 {
            return ((p - a as u64) % p) as usize;
        }
        let mut out = 0u64;
        let mut scale = 1u64;
        let mut a = a as u64;
        for _ in 0..self.order.e {
            out += ((p - a % p) % p) * scale;
            a /= p;
            scale *= p;
        }
        out as usize
    }

    fn mul_raw(&self, a: usize, b: usize) -> usize {
        let p = self.order.p;
        if self.order.e == 1 {
            return ((a as u64 * b as u64) % p) as usize;
        }
        let e = self.order.e as usize;
        let da = index_digits(a as u64, p, e);
        let db = index_digits(b as u64, p, e);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let rem = poly_mod(prod, &self.modulus, p);
        digits_index(&rem, p) as usize
    }
}

fn index_digits(mut idx: u64, p: u64, e: usize) -> Vec<u64> {
    let mut out = vec![0u64; e];
    for d in out.iter_mut() {
        *d = idx % p;
        idx /= p;
    }
    out
}

fn digits_index(digits: &[u64], p: u64) -> u64 {
    let mut out = 0u64;
    for &d in digits.iter().rev() {
        out = out * p + d;
    }
    out
}

/// Remainder of `r` modulo the monic polynomial `m` over GF(p).
/// Coefficients are constant-first.
fn poly_mod(mut r: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = r[r.len() - 1];
        if c != 0 {
            let shift = r.len() - 1 - dm;
            for i in 0..dm {
                let t = (c * m[i]) % p;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r.resize(dm, 0);
    r
}

fn poly_is_zero(r: &[u64]) -> bool {
    r.iter().all(|&c| c == 0)
}

/// Lexicographically smallest monic irreducible polynomial of degree e over
/// GF(p), coefficients compared constant term first.
fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    let count = p.pow(e as u32);
    for k in 0..count {
        // Decode k as the tuple (a_0, ..., a_{e-1}) with a_0 most significant,
        // so rising k enumerates tuples in lexicographic order.
        let mut coeffs = vec![0u64; e + 1];
        coeffs[e] = 1;
        let mut rest = k;
        for i in (0..e).rev() {
            coeffs[e - 1 - i] = rest / p.pow(i as u32);
            rest %= p.pow(i as u32);
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("monic irreducible polynomials exist for every degree over GF(p)")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for k in 0..p.pow(d as u32) {
            let mut g = index_digits(k, p, d);
            g.push(1);
            if poly_is_zero(&poly_mod(f.to_vec(), &g, p)) {
                return false;
            }
        }
    }
    true
}
