//! Exact arithmetic in H = U(d) for a finite-dimensional Lie algebra d,
//! in the divided-power Poincaré–Birkhoff–Witt basis.
//!
//! Basis monomials are written D^(I) for a multi-index I = (i_1,…,i_N),
//! meaning the ordered product of generator powers divided by I!.
//! Products straighten out-of-order generator pairs through the structure
//! constants; the coproduct is index-additive on divided powers.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Exponent tuple of a PBW monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        MultiIndex(v)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, if defined.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut v = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            v.push(a - b);
        }
        Some(MultiIndex(v))
    }

    /// I! as an exact integer.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.0 {
            for k in 2..=e {
                acc *= BigInt::from(k);
            }
        }
        acc
    }

    /// All splits I = J + K.
    pub fn splits2(&self) -> Vec<(MultiIndex, MultiIndex)> {
        let mut out = vec![(MultiIndex(vec![]), MultiIndex(vec![]))];
        for &e in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for (j, k) in &out {
                for a in 0..=e {
                    let mut jj = j.0.clone();
                    let mut kk = k.0.clone();
                    jj.push(a);
                    kk.push(e - a);
                    next.push((MultiIndex(jj), MultiIndex(kk)));
                }
            }
            out = next;
        }
        out
    }

    /// All splits of I into `parts` summands.
    pub fn splits(&self, parts: usize) -> Vec<Vec<MultiIndex>> {
        if parts == 1 {
            return vec![vec![self.clone()]];
        }
        let mut out = Vec::new();
        for (j, k) in self.splits2() {
            for mut rest in k.splits(parts - 1) {
                let mut v = Vec::with_capacity(parts);
                v.push(j.clone());
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }

    /// All multi-indices of length `n` with total degree `<= max`.
    pub fn enumerate(n: usize, max: usize) -> Vec<MultiIndex> {
        fn rec(n: usize, max: usize, acc: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if n == 0 {
                out.push(MultiIndex(acc.clone()));
                return;
            }
            for e in 0..=max {
                acc.push(e as u32);
                rec(n - 1, max - e, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, max, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "d{}", k + 1)?;
            } else {
                write!(f, "d{}^{}", k + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Structure constants of an N-dimensional Lie algebra: for i < j,
/// [D_i, D_j] = sum_k c^k_{ij} D_k. Only i < j pairs are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePresentation {
    pub dim: usize,
    pub brackets: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
}

impl LiePresentation {
    pub fn abelian(dim: usize) -> Self {
        LiePresentation {
            dim,
            brackets: BTreeMap::new(),
        }
    }

    /// The 2-dimensional solvable algebra [D_1, D_2] = D_2.
    pub fn solvable2() -> Self {
        let mut brackets = BTreeMap::new();
        brackets.insert((0, 1), vec![(1, Rat::one())]);
        LiePresentation { dim: 2, brackets }
    }

    /// sl2 with basis (e, h, f): [e,h] = -2e, [e,f] = h, [h,f] = -2f.
    pub fn sl2() -> Self {
        let mut brackets = BTreeMap::new();
        brackets.insert((0, 1), vec![(0, rat_int(-2))]);
        brackets.insert((0, 2), vec![(1, Rat::one())]);
        brackets.insert((1, 2), vec![(2, rat_int(-2))]);
        LiePresentation { dim: 3, brackets }
    }

    /// Structure constant c^k_{ij} for arbitrary i, j (antisymmetric fill).
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rat {
        if i == j {
            return Rat::zero();
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let c = self
            .brackets
            .get(&(a, b))
            .and_then(|v| v.iter().find(|(t, _)| *t == k))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero);
        if sign < 0 {
            -c
        } else {
            c
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets
            .values()
            .all(|v| v.iter().all(|(_, c)| c.is_zero()))
    }
}

/// Outcome of structure-constant validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieValidation {
    Ok,
    /// First failing Jacobi combination (i, j, k, l) with the defect value.
    JacobiFailure {
        triple: (usize, usize, usize, usize),
        defect: Rat,
    },
}

impl LieValidation {
    pub fn is_ok(&self) -> bool {
        matches!(self, LieValidation::Ok)
    }
}

/// Checks the Jacobi identity on all structure-constant triples.
pub fn validate_lie(p: &LiePresentation) -> LieValidation {
    let n = p.dim;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in 0..n {
                    let mut defect = Rat::zero();
                    for m in 0..n {
                        defect += p.constant(i, j, m) * p.constant(m, k, l)
                            + p.constant(j, k, m) * p.constant(m, i, l)
                            + p.constant(k, i, m) * p.constant(m, j, l);
                    }
                    if !defect.is_zero() {
                        return LieValidation::JacobiFailure {
                            triple: (i, j, k, l),
                            defect,
                        };
                    }
                }
            }
        }
    }
    LieValidation::Ok
}

/// Element of H: finite rational combination of divided-power monomials.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HopfElement {
    terms: BTreeMap<MultiIndex, Rat>,
}

impl HopfElement {
    pub fn zero() -> Self {
        HopfElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        HopfElement::monomial(MultiIndex::zero(dim), Rat::one())
    }

    pub fn monomial(idx: MultiIndex, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(idx, coeff);
        }
        HopfElement { terms }
    }

    /// The generator D_k as an element.
    pub fn gen(dim: usize, k: usize) -> Self {
        HopfElement::monomial(MultiIndex::unit(dim, k), Rat::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Rat {
        self.terms.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, idx: MultiIndex, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, c)| c.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        HopfElement {
            terms: self.terms.iter().map(|(i, c)| (i.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return HopfElement::zero();
        }
        HopfElement {
            terms: self
                .terms
                .iter()
                .map(|(i, x)| (i.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Filtration degree; -1 for the zero element.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|i| i.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(i, c)| i.is_zero() && c.is_one())
                .unwrap_or(false)
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let key = format!("{}", idx);
            if abs.is_one() && key != "1" {
                write!(f, "{}", key)?;
            } else if key == "1" {
                write!(f, "{}", abs)?;
            } else {
                write!(f, "{} {}", abs, key)?;
            }
        }
        Ok(())
    }
}

/// Element of H^{⊗n}: finite combination of monomial tensors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorPower {
    pub arity: usize,
    terms: BTreeMap<Vec<MultiIndex>, Rat>,
}

impl TensorPower {
    pub fn zero(arity: usize) -> Self {
        TensorPower {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(slots: Vec<MultiIndex>, coeff: Rat) -> Self {
        let arity = slots.len();
        let mut t = TensorPower::zero(arity);
        t.add_term(slots, coeff);
        t
    }

    pub fn one(dim: usize, arity: usize) -> Self {
        TensorPower::monomial(vec![MultiIndex::zero(dim); arity], Rat::one())
    }

    /// Pure tensor of elements, expanded into monomial keys.
    pub fn pure(factors: &[HopfElement]) -> Self {
        let arity = factors.len();
        let mut terms: Vec<(Vec<MultiIndex>, Rat)> = vec![(Vec::new(), Rat::one())];
        for f in factors {
            let mut next = Vec::new();
            for (slots, c) in &terms {
                for (idx, x) in f.terms() {
                    let mut s = slots.clone();
                    s.push(idx.clone());
                    next.push((s, c.clone() * x.clone()));
                }
            }
            terms = next;
        }
        let mut out = TensorPower::zero(arity);
        for (slots, c) in terms {
            out.add_term(slots, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, slots: Vec<MultiIndex>, coeff: Rat) {
        debug_assert_eq!(slots.len(), self.arity);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(slots.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&slots);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TensorPower {
            arity: self.arity,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return TensorPower::zero(self.arity);
        }
        TensorPower {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(s, x)| (s.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Reorders slots: slot j of each term moves to position perm[j].
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = TensorPower::zero(self.arity);
        for (slots, c) in &self.terms {
            let mut s = vec![MultiIndex(vec![]); self.arity];
            for (j, idx) in slots.iter().enumerate() {
                s[perm[j]] = idx.clone();
            }
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn swap12(&self) -> Self {
        let mut perm: Vec<usize> = (0..self.arity).collect();
        perm.swap(0, 1);
        self.permute(&perm)
    }
}

impl fmt::Display for TensorPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (slots, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{} (", c)?;
            for (j, s) in slots.iter().enumerate() {
                if j > 0 {
                    write!(f, " | ")?;
                }
                write!(f, "{}", s)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Ordinary (non-divided) linear combination used during straightening.
type Words = BTreeMap<MultiIndex, Rat>;

fn words_add(acc: &mut Words, idx: MultiIndex, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(idx.clone()).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&idx);
    }
}

/// The Hopf algebra U(d) for a validated presentation.
#[derive(Debug)]
pub struct Hopf {
    pres: LiePresentation,
    straighten_cache: Mutex<BTreeMap<(MultiIndex, usize), Words>>,
}

impl Hopf {
    pub fn new(pres: LiePresentation) -> Result<Self> {
        match validate_lie(&pres) {
            LieValidation::Ok => Ok(Hopf {
                pres,
                straighten_cache: Mutex::new(BTreeMap::new()),
            }),
            LieValidation::JacobiFailure { triple, defect } => Err(Error::InvalidPresentation(
                format!("Jacobi fails at {:?} with defect {}", triple, defect),
            )),
        }
    }

    pub fn polynomial(dim: usize) -> Self {
        Hopf::new(LiePresentation::abelian(dim)).expect("abelian presentation is valid")
    }

    pub fn dim(&self) -> usize {
        self.pres.dim
    }

    pub fn presentation(&self) -> &LiePresentation {
        &self.pres
    }

    pub fn is_abelian(&self) -> bool {
        self.pres.is_abelian()
    }

    pub fn one(&self) -> HopfElement {
        HopfElement::one(self.dim())
    }

    pub fn gen(&self, k: usize) -> HopfElement {
        HopfElement::gen(self.dim(), k)
    }

    pub fn divided_power(&self, k: usize, e: u32) -> HopfElement {
        let mut v = vec![0; self.dim()];
        v[k] = e;
        HopfElement::monomial(MultiIndex(v), Rat::one())
    }

    /// Ordinary-basis product of a normal word with a single generator on
    /// the right, straightened to normal order.
    fn mul_word_gen(&self, idx: &MultiIndex, g: usize) -> Words {
        if let Some(hit) = self
            .straighten_cache
            .lock()
            .unwrap()
            .get(&(idx.clone(), g))
        {
            return hit.clone();
        }
        let n = self.dim();
        let highest = (0..n).rev().find(|&k| idx.0[k] > 0 && k > g);
        let mut out: Words = BTreeMap::new();
        match highest {
            None => {
                let mut v = idx.clone();
                v.0[g] += 1;
                words_add(&mut out, v, Rat::one());
            }
            Some(b) => {
                let mut rest = idx.clone();
                rest.0[b] -= 1;
                // idx = rest * D_b with b the rightmost letter; commute D_g past it.
                let swapped = self.mul_word_gen(&rest, g);
                for (m, c) in swapped {
                    if m.0.iter().enumerate().all(|(k, &e)| e == 0 || k <= b) {
                        let mut v = m.clone();
                        v.0[b] += 1;
                        words_add(&mut out, v, c);
                    } else {
                        for (v, c2) in self.mul_word_gen(&m, b) {
                            words_add(&mut out, v, c.clone() * c2);
                        }
                    }
                }
                for k in 0..n {
                    let c = self.pres.constant(b, g, k);
                    if c.is_zero() {
                        continue;
                    }
                    for (v, c2) in self.mul_word_gen(&rest, k) {
                        words_add(&mut out, v, c.clone() * c2);
                    }
                }
            }
        }
        self.straighten_cache
            .lock()
            .unwrap()
            .insert((idx.clone(), g), out.clone());
        out
    }

    /// Ordinary-basis product of two normal words.
    fn mul_words(&self, left: &MultiIndex, right: &MultiIndex) -> Words {
        let mut acc: Words = BTreeMap::new();
        acc.insert(left.clone(), Rat::one());
        for (g, &e) in right.0.iter().enumerate() {
            for _ in 0..e {
                let mut next: Words = BTreeMap::new();
                for (m, c) in &acc {
                    for (v, c2) in self.mul_word_gen(m, g) {
                        words_add(&mut next, v, c.clone() * c2);
                    }
                }
                acc = next;
            }
        }
        acc
    }

    fn divided_from_words(words: Words, scale: &Rat) -> HopfElement {
        let mut out = HopfElement::zero();
        for (idx, c) in words {
            let fact = Rat::from_integer(idx.factorial());
            out.add_term(idx, c * scale.clone() * fact);
        }
        out
    }

    /// Product in H, straightening to the divided-power normal form.
    pub fn mul(&self, u: &HopfElement, v: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (i, ci) in u.terms() {
            for (j, cj) in v.terms() {
                let words = self.mul_words(i, j);
                let scale = ci.clone() * cj.clone()
                    / (Rat::from_integer(i.factorial()) * Rat::from_integer(j.factorial()));
                out = out.add(&Self::divided_from_words(words, &scale));
            }
        }
        out
    }

    pub fn mul_many(&self, factors: &[HopfElement]) -> HopfElement {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Iterated coproduct into `parts` tensor slots. On divided powers the
    /// coefficients are all 1: the exponent tuple distributes additively.
    pub fn coproduct(&self, u: &HopfElement, parts: usize) -> TensorPower {
        assert!(parts >= 1);
        let mut out = TensorPower::zero(parts);
        for (i, c) in u.terms() {
            for split in i.splits(parts) {
                out.add_term(split, c.clone());
            }
        }
        out
    }

    /// Iterated coproduct determined by an assignment of output slots to
    /// input slots. `pattern[j] = i` sends Sweedler components of input
    /// slot i to output slot j; every input slot must be hit.
    pub fn coproduct_pattern(&self, t: &TensorPower, pattern: &[usize]) -> Result<TensorPower> {
        let m = t.arity;
        let n = pattern.len();
        if n < m {
            return Err(Error::MalformedPattern(format!(
                "pattern length {} shorter than input arity {}",
                n, m
            )));
        }
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (j, &i) in pattern.iter().enumerate() {
            if i >= m {
                return Err(Error::MalformedPattern(format!(
                    "output slot {} refers to input slot {} out of range",
                    j, i
                )));
            }
            blocks[i].push(j);
        }
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::MalformedPattern(
                "pattern is not surjective onto input slots".into(),
            ));
        }
        let mut out = TensorPower::zero(n);
        for (slots, c) in t.terms() {
            let mut partial: Vec<(Vec<MultiIndex>, Rat)> =
                vec![(vec![MultiIndex(vec![]); n], c.clone())];
            for (i, block) in blocks.iter().enumerate() {
                let mut next = Vec::new();
                for split in slots[i].splits(block.len()) {
                    for (assign, cc) in &partial {
                        let mut a = assign.clone();
                        for (b, piece) in block.iter().zip(&split) {
                            a[*b] = piece.clone();
                        }
                        next.push((a, cc.clone()));
                    }
                }
                partial = next;
            }
            for (a, cc) in partial {
                out.add_term(a, cc);
            }
        }
        Ok(out)
    }

    pub fn counit(&self, u: &HopfElement) -> Rat {
        u.coeff(&MultiIndex::zero(self.dim()))
    }

    /// Antipode: on a divided-power monomial, (-1)^{|I|} times the
    /// reverse-order product of the generator word, restraightened.
    pub fn antipode(&self, u: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (i, c) in u.terms() {
            if i.is_zero() {
                out.add_term(i.clone(), c.clone());
                continue;
            }
            let mut acc: Words = BTreeMap::new();
            acc.insert(MultiIndex::zero(self.dim()), Rat::one());
            for g in (0..self.dim()).rev() {
                for _ in 0..i.0[g] {
                    let mut next: Words = BTreeMap::new();
                    for (m, cm) in &acc {
                        for (v, c2) in self.mul_word_gen(m, g) {
                            words_add(&mut next, v, cm.clone() * c2);
                        }
                    }
                    acc = next;
                }
            }
            let sign = if i.degree() % 2 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
            let scale = c.clone() * sign / Rat::from_integer(i.factorial());
            out = out.add(&Self::divided_from_words(acc, &scale));
        }
        out
    }

    pub fn degree(&self, u: &HopfElement) -> i64 {
        u.degree()
    }

    /// Componentwise product of tensors of equal arity.
    pub fn tensor_mul(&self, s: &TensorPower, t: &TensorPower) -> TensorPower {
        assert_eq!(s.arity, t.arity);
        let mut out = TensorPower::zero(s.arity);
        for (a, ca) in s.terms() {
            for (b, cb) in t.terms() {
                let mut factors: Vec<HopfElement> = Vec::with_capacity(s.arity);
                for (x, y) in a.iter().zip(b) {
                    factors.push(self.mul(
                        &HopfElement::monomial(x.clone(), Rat::one()),
                        &HopfElement::monomial(y.clone(), Rat::one()),
                    ));
                }
                let pure = TensorPower::pure(&factors);
                out = out.add(&pure.scale(&(ca.clone() * cb.clone())));
            }
        }
        out
    }

    /// Antipode applied to one slot of a tensor.
    pub fn tensor_antipode_slot(&self, t: &TensorPower, slot: usize) -> TensorPower {
        let mut out = TensorPower::zero(t.arity);
        for (slots, c) in t.terms() {
            let s = self.antipode(&HopfElement::monomial(slots[slot].clone(), Rat::one()));
            for (idx, cs) in s.terms() {
                let mut v = slots.clone();
                v[slot] = idx.clone();
                out.add_term(v, c.clone() * cs.clone());
            }
        }
        out
    }
}
