use std::fmt::Debug;
use std::hash::Hash;

/// Arithmetic context for a finite field; elements are plain values and the
/// context object carries the tables or modulus needed to combine them.
pub trait Field {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u32;
    /// Number of elements.
    fn order(&self) -> u128;
    /// Bijection `[0, order) -> field`; index `c` for `c < p` is `c * 1`.
    fn elem_at(&self, index: u128) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u128;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        let p = self.characteristic() as i64;
        self.elem_at(n.rem_euclid(p) as u128)
    }

    /// Absolute degree over the prime field, i.e. `log_p(order)`.
    fn prime_degree(&self) -> u32 {
        let p = self.characteristic() as u128;
        let mut q = self.order();
        let mut e = 0;
        while q > 1 {
            q /= p;
            e += 1;
        }
        e
    }
}
