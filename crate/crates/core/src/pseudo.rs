//! Canonical representatives for elements of H^{⊗n} ⊗_H M with M a left
//! H-module, together with the Fourier transform on H ⊗ H.
//!
//! Every element of H^{⊗n} ⊗_H M can be written uniquely with the last
//! tensor slot equal to 1 and the H-content pushed into the module side.
//! Equality is syntactic equality of these canonical forms. The rewrite
//! for a raw term f_1 ⊗ … ⊗ f_n ⊗_H m expands the Sweedler components of
//! the last slot g = f_n:
//!
//!   f_1 g_(-1) ⊗ … ⊗ f_{n-1} g_(-(n-1)) ⊗ 1 ⊗_H g_(n) m.

use crate::hopf::{Hopf, HopfElement, MultiIndex, Rat, TensorPower};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A left H-module with exact element arithmetic.
pub trait HMod: Clone + PartialEq + Eq + fmt::Display {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
    /// Left action of h.
    fn act(&self, hopf: &Hopf, h: &HopfElement) -> Self;
}

/// Names the H-basis of a free module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModuleSignature {
    pub labels: Vec<String>,
}

impl FreeModuleSignature {
    pub fn new(labels: Vec<String>) -> Self {
        FreeModuleSignature { labels }
    }

    pub fn of_rank(rank: usize) -> Self {
        FreeModuleSignature {
            labels: (1..=rank).map(|i| format!("a{}", i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }
}

/// Element of a free H-module: a vector of H-coefficients over the basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModuleElement {
    pub coeffs: Vec<HopfElement>,
}

impl ModuleElement {
    pub fn zero(rank: usize) -> Self {
        ModuleElement {
            coeffs: vec![HopfElement::zero(); rank],
        }
    }

    pub fn basis(rank: usize, dim: usize, i: usize) -> Self {
        let mut m = ModuleElement::zero(rank);
        m.coeffs[i] = HopfElement::one(dim);
        m
    }

    pub fn single(rank: usize, i: usize, h: HopfElement) -> Self {
        let mut m = ModuleElement::zero(rank);
        m.coeffs[i] = h;
        m
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }
}

impl HMod for ModuleElement {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        ModuleElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    fn neg(&self) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    fn scale(&self, c: &Rat) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    fn act(&self, hopf: &Hopf, h: &HopfElement) -> Self {
        ModuleElement {
            coeffs: self.coeffs.iter().map(|x| hopf.mul(h, x)).collect(),
        }
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}) a{}", c, i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The base field as a trivial module: h acts by its counit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar(pub Rat);

impl HMod for Scalar {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Scalar(self.0.clone() + other.0.clone())
    }
    fn neg(&self) -> Self {
        Scalar(-self.0.clone())
    }
    fn scale(&self, c: &Rat) -> Self {
        Scalar(self.0.clone() * c.clone())
    }
    fn act(&self, hopf: &Hopf, h: &HopfElement) -> Self {
        Scalar(self.0.clone() * hopf.counit(h))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Element of a tensor product of free H-modules with the diagonal
/// action. Keys hold one (coefficient monomial, basis index) pair per
/// slot; the monomial expansion over the slot bases is a unique normal
/// form, so equality is syntactic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    pub slots: usize,
    terms: BTreeMap<Vec<(MultiIndex, usize)>, Rat>,
}

impl TensorElement {
    pub fn zero(slots: usize) -> Self {
        TensorElement {
            slots,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<(MultiIndex, usize)>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: Vec<(MultiIndex, usize)>, c: Rat) {
        debug_assert_eq!(key.len(), self.slots);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Pure tensor m ⊗ n of two free-module elements.
    pub fn from_pair(m: &ModuleElement, n: &ModuleElement) -> Self {
        let mut out = TensorElement::zero(2);
        for (i, ci) in m.coeffs.iter().enumerate() {
            for (ii, cc) in ci.terms() {
                for (j, cj) in n.coeffs.iter().enumerate() {
                    for (jj, dd) in cj.terms() {
                        out.add_term(
                            vec![(ii.clone(), i), (jj.clone(), j)],
                            cc.clone() * dd.clone(),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn from_triple(m: &ModuleElement, n: &ModuleElement, p: &ModuleElement) -> Self {
        let mut out = TensorElement::zero(3);
        for (i, ci) in m.coeffs.iter().enumerate() {
            for (ii, cc) in ci.terms() {
                for (j, cj) in n.coeffs.iter().enumerate() {
                    for (jj, dd) in cj.terms() {
                        for (k, ck) in p.coeffs.iter().enumerate() {
                            for (kk, ee) in ck.terms() {
                                out.add_term(
                                    vec![(ii.clone(), i), (jj.clone(), j), (kk.clone(), k)],
                                    cc.clone() * dd.clone() * ee.clone(),
                                );
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Swaps two slots (both coefficient and basis label).
    pub fn swap(&self, a: usize, b: usize) -> Self {
        let mut out = TensorElement::zero(self.slots);
        for (key, c) in &self.terms {
            let mut k = key.clone();
            k.swap(a, b);
            out.add_term(k, c.clone());
        }
        out
    }

    /// Extracts the slot as a free-module element, given the other slots'
    /// key fixed; helper for iterating pure decompositions.
    pub fn slot_element(rank: usize, dim: usize, key: &(MultiIndex, usize)) -> ModuleElement {
        let mut m = ModuleElement::zero(rank);
        m.coeffs[key.1] = HopfElement::monomial(key.0.clone(), Rat::one());
        let _ = dim;
        m
    }
}

impl HMod for TensorElement {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.slots, other.slots);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        TensorElement {
            slots: self.slots,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }

    fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return TensorElement::zero(self.slots);
        }
        TensorElement {
            slots: self.slots,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    fn act(&self, hopf: &Hopf, h: &HopfElement) -> Self {
        let mut out = TensorElement::zero(self.slots);
        for (key, c) in &self.terms {
            for (parts, cc) in hopf.coproduct(h, self.slots).terms() {
                let mut factors: Vec<(HopfElement, usize)> = Vec::with_capacity(self.slots);
                for (s, (idx, b)) in key.iter().enumerate() {
                    factors.push((
                        hopf.mul(
                            &HopfElement::monomial(parts[s].clone(), Rat::one()),
                            &HopfElement::monomial(idx.clone(), Rat::one()),
                        ),
                        *b,
                    ));
                }
                // expand the product of slot coefficients into keys
                let mut partial: Vec<(Vec<(MultiIndex, usize)>, Rat)> =
                    vec![(Vec::new(), c.clone() * cc.clone())];
                for (f, b) in &factors {
                    let mut next = Vec::new();
                    for (k, cp) in &partial {
                        for (idx, cf) in f.terms() {
                            let mut kk = k.clone();
                            kk.push((idx.clone(), *b));
                            next.push((kk, cp.clone() * cf.clone()));
                        }
                    }
                    partial = next;
                }
                for (k, cp) in partial {
                    out.add_term(k, cp);
                }
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{} ", c)?;
            for (s, (idx, b)) in key.iter().enumerate() {
                if s > 0 {
                    write!(f, " (x) ")?;
                }
                write!(f, "[{}]a{}", idx, b + 1)?;
            }
        }
        Ok(())
    }
}

/// Fourier transform on H ⊗ H: forward sends f ⊗ g to f g_(-1) ⊗ g_(2),
/// inverse sends f ⊗ g to f g_(1) ⊗ g_(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierDirection {
    Forward,
    Inverse,
}

pub fn fourier(hopf: &Hopf, t: &TensorPower, direction: FourierDirection) -> TensorPower {
    assert_eq!(t.arity, 2);
    let mut out = TensorPower::zero(2);
    for (slots, c) in t.terms() {
        let g = HopfElement::monomial(slots[1].clone(), Rat::one());
        for (parts, cc) in hopf.coproduct(&g, 2).terms() {
            let g1 = HopfElement::monomial(parts[0].clone(), Rat::one());
            let factor = match direction {
                FourierDirection::Forward => hopf.antipode(&g1),
                FourierDirection::Inverse => g1,
            };
            let first = hopf.mul(&HopfElement::monomial(slots[0].clone(), Rat::one()), &factor);
            for (i, cf) in first.terms() {
                out.add_term(
                    vec![i.clone(), parts[1].clone()],
                    c.clone() * cc.clone() * cf.clone(),
                );
            }
        }
    }
    out
}

/// Canonical element of H^{⊗n} ⊗_H M: finite map from the first n-1
/// monomial slots to module elements, the last slot being 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoTensor<M: HMod> {
    pub arity: usize,
    terms: BTreeMap<Vec<MultiIndex>, M>,
}

impl<M: HMod> PseudoTensor<M> {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1);
        PseudoTensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// Already-canonical constructor: key is the first n-1 slots.
    pub fn from_canonical_term(arity: usize, key: Vec<MultiIndex>, value: M) -> Self {
        let mut t = PseudoTensor::zero(arity);
        t.accumulate(key, value);
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &M)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn accumulate(&mut self, key: Vec<MultiIndex>, value: M) {
        debug_assert_eq!(key.len(), self.arity - 1);
        if value.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, value);
            }
            Some(old) => {
                let sum = old.add(&value);
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.accumulate(k.clone(), v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PseudoTensor {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return PseudoTensor::zero(self.arity);
        }
        PseudoTensor {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.scale(c)))
                .collect(),
        }
    }

    /// Canonicalises a list of raw terms (tensor, module element).
    pub fn normalize(hopf: &Hopf, arity: usize, raw: &[(TensorPower, M)]) -> Self {
        let mut out = PseudoTensor::zero(arity);
        for (t, m) in raw {
            assert_eq!(t.arity, arity);
            if m.is_zero() {
                continue;
            }
            for (slots, c) in t.terms() {
                let last = &slots[arity - 1];
                if last.is_zero() {
                    out.accumulate(slots[..arity - 1].to_vec(), m.scale(c));
                    continue;
                }
                for split in last.splits(arity) {
                    // slots i < n-1 get f_i S(g_(i+1)); the module side gets g_(n) m
                    let mut keyed: Vec<(Vec<MultiIndex>, Rat)> = vec![(Vec::new(), c.clone())];
                    for i in 0..arity - 1 {
                        let s = hopf.antipode(&HopfElement::monomial(split[i].clone(), Rat::one()));
                        let prod = hopf.mul(
                            &HopfElement::monomial(slots[i].clone(), Rat::one()),
                            &s,
                        );
                        let mut next = Vec::new();
                        for (key, cc) in &keyed {
                            for (idx, cp) in prod.terms() {
                                let mut k = key.clone();
                                k.push(idx.clone());
                                next.push((k, cc.clone() * cp.clone()));
                            }
                        }
                        keyed = next;
                    }
                    let acted = m.act(
                        hopf,
                        &HopfElement::monomial(split[arity - 1].clone(), Rat::one()),
                    );
                    for (key, cc) in keyed {
                        out.accumulate(key, acted.scale(&cc));
                    }
                }
            }
        }
        out
    }

    /// Raw view of the canonical form: each term as a pure tensor with the
    /// trailing 1 slot restored.
    pub fn raw_terms(&self, dim: usize) -> Vec<(TensorPower, M)> {
        self.terms
            .iter()
            .map(|(k, v)| {
                let mut slots = k.clone();
                slots.push(MultiIndex::zero(dim));
                (TensorPower::monomial(slots, Rat::one()), v.clone())
            })
            .collect()
    }

    /// Multiplies the raw slots by a tensor of the same arity and
    /// renormalises.
    pub fn mul_slots(&self, hopf: &Hopf, t: &TensorPower) -> Self {
        assert_eq!(t.arity, self.arity);
        let mut raw = Vec::new();
        for (key, m) in self.terms() {
            for (slots, c) in t.terms() {
                let mut factors = Vec::with_capacity(self.arity);
                for i in 0..self.arity - 1 {
                    factors.push(hopf.mul(
                        &HopfElement::monomial(slots[i].clone(), Rat::one()),
                        &HopfElement::monomial(key[i].clone(), Rat::one()),
                    ));
                }
                factors.push(HopfElement::monomial(slots[self.arity - 1].clone(), c.clone()));
                raw.push((TensorPower::pure(&factors), m.clone()));
            }
        }
        PseudoTensor::normalize(hopf, self.arity, &raw)
    }

    /// Outer H-action: multiplies the first slot by h.
    pub fn act_outer(&self, hopf: &Hopf, h: &HopfElement) -> Self {
        let mut out = PseudoTensor::zero(self.arity);
        for (key, m) in self.terms() {
            let prod = hopf.mul(h, &HopfElement::monomial(key[0].clone(), Rat::one()));
            for (idx, c) in prod.terms() {
                let mut k = key.clone();
                k[0] = idx.clone();
                out.accumulate(k, m.scale(c));
            }
        }
        out
    }

    /// Applies a permutation to the raw slots (slot j moves to perm[j])
    /// and renormalises.
    pub fn permute(&self, hopf: &Hopf, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let raw: Vec<(TensorPower, M)> = self
            .raw_terms(hopf.dim())
            .into_iter()
            .map(|(t, m)| (t.permute(perm), m))
            .collect();
        PseudoTensor::normalize(hopf, self.arity, &raw)
    }

    /// Transposition of the first two slots.
    pub fn swap12(&self, hopf: &Hopf) -> Self {
        let mut perm: Vec<usize> = (0..self.arity).collect();
        perm.swap(0, 1);
        self.permute(hopf, &perm)
    }

    /// Maps module values, dropping zeros.
    pub fn map_values<N: HMod>(&self, f: impl Fn(&M) -> N) -> PseudoTensor<N> {
        let mut out = PseudoTensor::zero(self.arity);
        for (k, v) in self.terms() {
            out.accumulate(k.clone(), f(v));
        }
        out
    }
}

pub fn equals<M: HMod>(a: &PseudoTensor<M>, b: &PseudoTensor<M>) -> bool {
    a == b
}

impl<M: HMod> fmt::Display for PseudoTensor<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, m) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "(")?;
            for idx in key {
                write!(f, "{} | ", idx)?;
            }
            write!(f, "1) # {}", m)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{rat_int, LiePresentation};

    fn free1(hopf: &Hopf) -> ModuleElement {
        ModuleElement::basis(1, hopf.dim(), 0)
    }

    #[test]
    fn fourier_examples() {
        let h = Hopf::polynomial(1);
        // F(1 x D) = 1 x D - D x 1
        let t = TensorPower::monomial(vec![MultiIndex(vec![0]), MultiIndex(vec![1])], Rat::one());
        let ft = fourier(&h, &t, FourierDirection::Forward);
        let mut expected = TensorPower::zero(2);
        expected.add_term(vec![MultiIndex(vec![0]), MultiIndex(vec![1])], Rat::one());
        expected.add_term(vec![MultiIndex(vec![1]), MultiIndex(vec![0])], -Rat::one());
        assert_eq!(ft, expected);
        // F(f x 1) = f x 1
        let t = TensorPower::monomial(vec![MultiIndex(vec![3]), MultiIndex(vec![0])], rat_int(5));
        assert_eq!(fourier(&h, &t, FourierDirection::Forward), t);
        // inverse round trip
        let t = TensorPower::monomial(vec![MultiIndex(vec![1]), MultiIndex(vec![2])], Rat::one());
        let back = fourier(&h, &fourier(&h, &t, FourierDirection::Forward), FourierDirection::Inverse);
        assert_eq!(back, t);
    }

    #[test]
    fn fourier_involution_exhaustive() {
        for pres in [LiePresentation::abelian(1), LiePresentation::solvable2()] {
            let h = Hopf::new(pres).unwrap();
            for i in MultiIndex::enumerate(h.dim(), 3) {
                for j in MultiIndex::enumerate(h.dim(), 3) {
                    let t = TensorPower::monomial(vec![i.clone(), j.clone()], Rat::one());
                    let fwd = fourier(&h, &t, FourierDirection::Forward);
                    assert_eq!(fourier(&h, &fwd, FourierDirection::Inverse), t);
                    let inv = fourier(&h, &t, FourierDirection::Inverse);
                    assert_eq!(fourier(&h, &inv, FourierDirection::Forward), t);
                }
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let h = Hopf::polynomial(1);
        let a = free1(&h);
        // (1 x D) @ a  ->  (-D x 1) @ a + (1 x 1) @ Da
        let raw = vec![(
            TensorPower::monomial(vec![MultiIndex(vec![0]), MultiIndex(vec![1])], Rat::one()),
            a.clone(),
        )];
        let canon = PseudoTensor::normalize(&h, 2, &raw);
        let mut expected = PseudoTensor::zero(2);
        expected.accumulate(
            vec![MultiIndex(vec![1])],
            a.scale(&-Rat::one()),
        );
        expected.accumulate(
            vec![MultiIndex(vec![0])],
            a.act(&h, &h.gen(0)),
        );
        assert_eq!(canon, expected);

        // (h x 1) @ a is already canonical
        let raw = vec![(
            TensorPower::monomial(vec![MultiIndex(vec![4]), MultiIndex(vec![0])], rat_int(3)),
            a.clone(),
        )];
        let canon = PseudoTensor::normalize(&h, 2, &raw);
        let mut expected = PseudoTensor::zero(2);
        expected.accumulate(vec![MultiIndex(vec![4])], a.scale(&rat_int(3)));
        assert_eq!(canon, expected);
    }

    #[test]
    fn normalize_three_slots() {
        let h = Hopf::polynomial(1);
        let a = free1(&h);
        // middle slot is untouched
        let raw = vec![(
            TensorPower::monomial(
                vec![MultiIndex(vec![0]), MultiIndex(vec![1]), MultiIndex(vec![0])],
                Rat::one(),
            ),
            a.clone(),
        )];
        let canon = PseudoTensor::normalize(&h, 3, &raw);
        let mut expected = PseudoTensor::zero(3);
        expected.accumulate(vec![MultiIndex(vec![0]), MultiIndex(vec![1])], a.clone());
        assert_eq!(canon, expected);

        // (1 x 1 x D) @ a -> (-D x 1 x 1) @ a - (1 x D x 1) @ a + (1 x 1 x 1) @ Da
        let raw = vec![(
            TensorPower::monomial(
                vec![MultiIndex(vec![0]), MultiIndex(vec![0]), MultiIndex(vec![1])],
                Rat::one(),
            ),
            a.clone(),
        )];
        let canon = PseudoTensor::normalize(&h, 3, &raw);
        let mut expected = PseudoTensor::zero(3);
        expected.accumulate(
            vec![MultiIndex(vec![1]), MultiIndex(vec![0])],
            a.scale(&-Rat::one()),
        );
        expected.accumulate(
            vec![MultiIndex(vec![0]), MultiIndex(vec![1])],
            a.scale(&-Rat::one()),
        );
        expected.accumulate(
            vec![MultiIndex(vec![0]), MultiIndex(vec![0])],
            a.act(&h, &h.gen(0)),
        );
        assert_eq!(canon, expected);
    }

    #[test]
    fn normalize_respects_middle_slot_identity() {
        // (1 x g x 1) @_H 1  =  (g_(-1) x 1 x g_(-2)) @_H 1 over the
        // trivial module
        for pres in [LiePresentation::abelian(1), LiePresentation::solvable2()] {
            let h = Hopf::new(pres).unwrap();
            let m = Scalar(Rat::one());
            for g in MultiIndex::enumerate(h.dim(), 3) {
                let lhs_raw = vec![(
                    TensorPower::monomial(
                        vec![MultiIndex::zero(h.dim()), g.clone(), MultiIndex::zero(h.dim())],
                        Rat::one(),
                    ),
                    m.clone(),
                )];
                let ge = HopfElement::monomial(g.clone(), Rat::one());
                let mut rhs_raw = Vec::new();
                for (parts, c) in h.coproduct(&ge, 2).terms() {
                    let s1 = h.antipode(&HopfElement::monomial(parts[0].clone(), Rat::one()));
                    let s2 = h.antipode(&HopfElement::monomial(parts[1].clone(), Rat::one()));
                    rhs_raw.push((
                        TensorPower::pure(&[s1, h.one(), s2]).scale(c),
                        m.clone(),
                    ));
                }
                let lhs = PseudoTensor::normalize(&h, 3, &lhs_raw);
                let rhs = PseudoTensor::normalize(&h, 3, &rhs_raw);
                assert_eq!(lhs, rhs, "identity fails for g = {}", g);
            }
        }
    }

    #[test]
    fn normalize_is_idempotent_and_relation_invariant() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x9e3779b9);
        let presentations = [LiePresentation::abelian(1), LiePresentation::solvable2()];
        for _case in 0..200 {
            let pres = presentations[rng.gen_range(0..presentations.len())].clone();
            let h = Hopf::new(pres).unwrap();
            let dim = h.dim();
            let arity = rng.gen_range(2..=3usize);
            let rand_idx = |rng: &mut StdRng| {
                let mut v = vec![0u32; dim];
                for e in v.iter_mut() {
                    *e = rng.gen_range(0..=2u32);
                }
                MultiIndex(v)
            };
            let mut raw = Vec::new();
            for _ in 0..rng.gen_range(1..=2) {
                let slots: Vec<MultiIndex> = (0..arity).map(|_| rand_idx(&mut rng)).collect();
                let c = rat_int(rng.gen_range(-3..=3i64));
                let m = ModuleElement::single(
                    2,
                    rng.gen_range(0..2usize),
                    HopfElement::monomial(rand_idx(&mut rng), Rat::one()),
                );
                raw.push((TensorPower::monomial(slots, c), m));
            }
            let canon = PseudoTensor::normalize(&h, arity, &raw);

            // idempotence
            let again = PseudoTensor::normalize(&h, arity, &canon.raw_terms(dim));
            assert_eq!(canon, again);

            // moving an H-factor across @_H via the iterated coproduct
            let g = rand_idx(&mut rng);
            let ge = HopfElement::monomial(g, Rat::one());
            let mut moved = Vec::new();
            for (t, m) in &raw {
                for (parts, c) in h.coproduct(&ge, arity).terms() {
                    let mut factors: Vec<HopfElement> = Vec::new();
                    for i in 0..arity {
                        factors.push(HopfElement::monomial(parts[i].clone(), Rat::one()));
                    }
                    let shift = TensorPower::pure(&factors).scale(c);
                    moved.push((h.tensor_mul(t, &shift), m.clone()));
                }
            }
            let lhs = PseudoTensor::normalize(&h, arity, &moved);
            let mut rhs_raw = Vec::new();
            for (t, m) in &raw {
                rhs_raw.push((t.clone(), m.act(&h, &ge)));
            }
            let rhs = PseudoTensor::normalize(&h, arity, &rhs_raw);
            assert_eq!(lhs, rhs, "relation move changed the canonical form");
        }
    }

    #[test]
    fn permutation_examples() {
        let h = Hopf::polynomial(1);
        let a = free1(&h);
        // sigma_12 (D x 1) @ a = (-D x 1) @ a + (1 x 1) @ Da
        let t = PseudoTensor::from_canonical_term(2, vec![MultiIndex(vec![1])], a.clone());
        let swapped = t.swap12(&h);
        let mut expected = PseudoTensor::zero(2);
        expected.accumulate(vec![MultiIndex(vec![1])], a.scale(&-Rat::one()));
        expected.accumulate(vec![MultiIndex(vec![0])], a.act(&h, &h.gen(0)));
        assert_eq!(swapped, expected);
        // identity permutation
        assert_eq!(t.permute(&h, &[0, 1]), t);
        // involution
        assert_eq!(swapped.swap12(&h), t);
    }

    #[test]
    fn permutation_involution_random() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        let h = Hopf::new(LiePresentation::solvable2()).unwrap();
        for _ in 0..40 {
            let arity = rng.gen_range(2..=3usize);
            let mut t = PseudoTensor::zero(arity);
            for _ in 0..2 {
                let key: Vec<MultiIndex> = (0..arity - 1)
                    .map(|_| {
                        MultiIndex(vec![rng.gen_range(0..=2u32), rng.gen_range(0..=1u32)])
                    })
                    .collect();
                let m = ModuleElement::single(
                    1,
                    0,
                    HopfElement::monomial(
                        MultiIndex(vec![rng.gen_range(0..=1u32), rng.gen_range(0..=1u32)]),
                        rat_int(rng.gen_range(1..=2i64)),
                    ),
                );
                t.accumulate(key, m);
            }
            for s in 0..arity - 1 {
                let mut perm: Vec<usize> = (0..arity).collect();
                perm.swap(s, s + 1);
                let once = t.permute(&h, &perm);
                let twice = once.permute(&h, &perm);
                assert_eq!(twice, t);
            }
        }
    }

    #[test]
    fn equality_examples() {
        let h = Hopf::polynomial(1);
        let a = free1(&h);
        let lhs = PseudoTensor::normalize(
            &h,
            2,
            &[(
                TensorPower::monomial(vec![MultiIndex(vec![0]), MultiIndex(vec![1])], Rat::one()),
                a.clone(),
            )],
        );
        let mut rhs = PseudoTensor::zero(2);
        rhs.accumulate(vec![MultiIndex(vec![1])], a.scale(&-Rat::one()));
        rhs.accumulate(vec![MultiIndex(vec![0])], a.act(&h, &h.gen(0)));
        assert!(equals(&lhs, &rhs));

        let d_left = PseudoTensor::from_canonical_term(2, vec![MultiIndex(vec![1])], a.clone());
        assert!(!equals(&d_left, &lhs));
        assert!(equals(
            &PseudoTensor::<ModuleElement>::zero(2),
            &PseudoTensor::normalize(&h, 2, &[]),
        ));
    }

    #[test]
    fn outer_action_and_slot_multiplication() {
        let h = Hopf::polynomial(1);
        let a = free1(&h);
        let t = PseudoTensor::from_canonical_term(2, vec![MultiIndex(vec![2])], a.clone());
        // (h x 1) action multiplies the first slot
        let acted = t.act_outer(&h, &h.gen(0));
        let mut expected = PseudoTensor::zero(2);
        expected.accumulate(vec![MultiIndex(vec![3])], a.scale(&rat_int(3)));
        assert_eq!(acted, expected);
        // (1 x D) multiplication renormalises
        let td = TensorPower::monomial(vec![MultiIndex(vec![0]), MultiIndex(vec![1])], Rat::one());
        let one_t = PseudoTensor::from_canonical_term(2, vec![MultiIndex(vec![0])], a.clone());
        let r = one_t.mul_slots(&h, &td);
        let mut expected = PseudoTensor::zero(2);
        expected.accumulate(vec![MultiIndex(vec![1])], a.scale(&-Rat::one()));
        expected.accumulate(vec![MultiIndex(vec![0])], a.act(&h, &h.gen(0)));
        assert_eq!(r, expected);
    }
}
