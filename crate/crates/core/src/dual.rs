//! The topological dual X = H* through its finite shadow: elements are
//! finite combinations of the dual basis t_I, optionally truncated.
//!
//! A truncation marker N means coefficients of t_I with |I| > N are
//! unknown. Operations that would need them fail with
//! `TruncationInsufficient` instead of guessing. For nonabelian d the
//! H-actions and the antipode can produce genuinely infinite support, so
//! those return truncated results there; over abelian d they are exact.

use crate::error::{Error, Result};
use crate::hopf::{Hopf, HopfElement, MultiIndex, Rat};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Finite combination of dual-basis functionals t_I.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DualElement {
    terms: BTreeMap<MultiIndex, Rat>,
    /// Coefficients of t_I with |I| > truncation are unknown.
    pub truncation: Option<usize>,
}

impl DualElement {
    pub fn zero() -> Self {
        DualElement {
            terms: BTreeMap::new(),
            truncation: None,
        }
    }

    pub fn basis(idx: MultiIndex) -> Self {
        DualElement::monomial(idx, Rat::one())
    }

    pub fn monomial(idx: MultiIndex, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(idx, coeff);
        }
        DualElement {
            terms,
            truncation: None,
        }
    }

    /// t_n over a one-dimensional d.
    pub fn t(n: u32) -> Self {
        DualElement::basis(MultiIndex(vec![n]))
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

    pub fn support_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|i| i.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn min_support_degree(&self) -> Option<usize> {
        self.terms.keys().map(|i| i.degree()).min()
    }

    pub fn add_term(&mut self, idx: MultiIndex, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        if let Some(n) = self.truncation {
            debug_assert!(idx.degree() <= n, "term beyond truncation");
        }
        let e = self.terms.entry(idx.clone()).or_insert_with(Rat::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let truncation = match (self.truncation, other.truncation) {
            (None, t) | (t, None) => t,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut out = DualElement {
            terms: BTreeMap::new(),
            truncation,
        };
        for (i, c) in self.terms.iter().chain(other.terms.iter()) {
            if truncation.map(|n| i.degree() <= n).unwrap_or(true) {
                out.add_term(i.clone(), c.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        DualElement {
            terms: self.terms.iter().map(|(i, c)| (i.clone(), -c.clone())).collect(),
            truncation: self.truncation,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return DualElement {
                terms: BTreeMap::new(),
                truncation: self.truncation,
            };
        }
        DualElement {
            terms: self
                .terms
                .iter()
                .map(|(i, x)| (i.clone(), x.clone() * c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (idx, c) in &self.terms {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let exps: Vec<String> = idx.0.iter().map(|e| e.to_string()).collect();
                if c.is_one() {
                    write!(f, "t({})", exps.join(","))?;
                } else {
                    write!(f, "{} t({})", c, exps.join(","))?;
                }
            }
        }
        if let Some(n) = self.truncation {
            write!(f, " [?>{}]", n)?;
        }
        Ok(())
    }
}

/// Kronecker pairing <t_I, D^(J)> = delta_{I,J}, extended bilinearly.
pub fn pair(x: &DualElement, h: &HopfElement) -> Result<Rat> {
    if let Some(n) = x.truncation {
        let needed = h.degree();
        if needed > n as i64 {
            return Err(Error::TruncationInsufficient {
                needed: needed as usize,
                available: n as i64,
            });
        }
    }
    let mut acc = Rat::zero();
    for (i, c) in x.terms() {
        let hc = h.coeff(i);
        if !hc.is_zero() {
            acc += c.clone() * hc;
        }
    }
    Ok(acc)
}

/// <x, S(h)> computed without materialising S on the dual side.
pub fn pair_antipode(hopf: &Hopf, x: &DualElement, h: &HopfElement) -> Result<Rat> {
    pair(x, &hopf.antipode(h))
}

/// Product t_J t_K = t_{J+K}, extended bilinearly. Truncations shift by
/// the minimal support degree of the other factor.
pub fn x_mul(x: &DualElement, y: &DualElement) -> DualElement {
    let bound = |a: &DualElement, b: &DualElement| -> Option<usize> {
        a.truncation
            .map(|n| n + b.min_support_degree().unwrap_or(0))
    };
    let truncation = match (bound(x, y), bound(y, x)) {
        (None, t) | (t, None) => t,
        (Some(a), Some(b)) => Some(a.min(b)),
    };
    let mut out = DualElement {
        terms: BTreeMap::new(),
        truncation,
    };
    for (i, ci) in x.terms() {
        for (j, cj) in y.terms() {
            let k = i.add(j);
            if truncation.map(|n| k.degree() <= n).unwrap_or(true) {
                out.add_term(k, ci.clone() * cj.clone());
            }
        }
    }
    out
}

/// Coefficient of t_J in the left action h·x, i.e. <x, S(h) D^(J)>.
fn left_act_coeff(hopf: &Hopf, h: &HopfElement, x: &DualElement, j: &MultiIndex) -> Result<Rat> {
    let prod = hopf.mul(
        &hopf.antipode(h),
        &HopfElement::monomial(j.clone(), Rat::one()),
    );
    pair(x, &prod)
}

/// Coefficient of t_J in the right action x·h, i.e. <x, D^(J) S(h)>.
fn right_act_coeff(hopf: &Hopf, h: &HopfElement, x: &DualElement, j: &MultiIndex) -> Result<Rat> {
    let prod = hopf.mul(
        &HopfElement::monomial(j.clone(), Rat::one()),
        &hopf.antipode(h),
    );
    pair(x, &prod)
}

/// H-action on X by <hx, f> = <x, S(h)f> (left) or <xh, f> = <x, f S(h)>
/// (right).
///
/// Over an abelian d the result is exact: monomials shift indexes. Over a
/// nonabelian d the support can be infinite, so the result carries a
/// truncation marker at max support degree of x plus deg h.
pub fn act(hopf: &Hopf, h: &HopfElement, x: &DualElement, side: Side) -> Result<DualElement> {
    if x.is_zero() {
        return Ok(DualElement {
            terms: BTreeMap::new(),
            truncation: x.truncation,
        });
    }
    let hdeg = h.degree().max(0) as usize;
    let out_trunc: Option<usize> = match x.truncation {
        Some(n) => {
            if hdeg > n {
                return Err(Error::TruncationInsufficient {
                    needed: hdeg,
                    available: n as i64,
                });
            }
            Some(n - hdeg)
        }
        None => {
            if hopf.is_abelian() {
                None
            } else {
                Some(x.support_degree().max(0) as usize + hdeg)
            }
        }
    };
    let window = match out_trunc {
        Some(n) => n,
        None => x.support_degree().max(0) as usize + hdeg,
    };
    let mut out = DualElement {
        terms: BTreeMap::new(),
        truncation: out_trunc,
    };
    for j in MultiIndex::enumerate(hopf.dim(), window) {
        let c = match side {
            Side::Left => left_act_coeff(hopf, h, x, &j)?,
            Side::Right => right_act_coeff(hopf, h, x, &j)?,
        };
        out.add_term(j, c);
    }
    Ok(out)
}

/// Antipode on X: <S(x), h> = <x, S(h)>. Exact over abelian d, where
/// S(t_I) = (-1)^{|I|} t_I; truncated otherwise.
pub fn x_antipode(hopf: &Hopf, x: &DualElement) -> DualElement {
    if hopf.is_abelian() {
        let mut out = DualElement {
            terms: BTreeMap::new(),
            truncation: x.truncation,
        };
        for (i, c) in x.terms() {
            let sign = if i.degree() % 2 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
            out.add_term(i.clone(), c.clone() * sign);
        }
        return out;
    }
    let window = match x.truncation {
        Some(n) => n,
        None => x.support_degree().max(0) as usize,
    };
    let mut out = DualElement {
        terms: BTreeMap::new(),
        truncation: Some(window),
    };
    for k in MultiIndex::enumerate(hopf.dim(), window) {
        let s = hopf.antipode(&HopfElement::monomial(k.clone(), Rat::one()));
        if let Ok(c) = pair(x, &s) {
            out.add_term(k, c);
        }
    }
    out
}

/// Truncated table of the coproduct of x: entry (J, K) is <x, D^(J) D^(K)>
/// for |J|, |K| <= cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCoproduct {
    pub cutoff: usize,
    pub entries: BTreeMap<(MultiIndex, MultiIndex), Rat>,
}

pub fn x_coproduct_truncated(hopf: &Hopf, x: &DualElement, cutoff: usize) -> Result<DualCoproduct> {
    let mut entries = BTreeMap::new();
    let all = MultiIndex::enumerate(hopf.dim(), cutoff);
    for j in &all {
        for k in &all {
            let prod = hopf.mul(
                &HopfElement::monomial(j.clone(), Rat::one()),
                &HopfElement::monomial(k.clone(), Rat::one()),
            );
            let c = pair(x, &prod)?;
            if !c.is_zero() {
                entries.insert((j.clone(), k.clone()), c);
            }
        }
    }
    Ok(DualCoproduct { cutoff, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{rat_int, LiePresentation};

    #[test]
    fn pairing_examples() {
        let x = DualElement::t(2);
        let h = Hopf::polynomial(1);
        assert_eq!(pair(&x, &h.divided_power(0, 2)).unwrap(), Rat::one());
        assert_eq!(pair(&x, &h.divided_power(0, 1)).unwrap(), Rat::zero());
        let y = DualElement::t(1).add(&DualElement::t(0).scale(&rat_int(3)));
        assert_eq!(pair(&y, &h.one().scale(&rat_int(2))).unwrap(), rat_int(6));
    }

    #[test]
    fn pairing_expands_elements() {
        // g = sum_I <g, t_I> D^(I) on a sample
        let h = Hopf::new(LiePresentation::solvable2()).unwrap();
        let g = h.mul(&h.gen(1), &h.gen(0)).add(&h.one().scale(&rat_int(5)));
        let mut rebuilt = HopfElement::zero();
        for i in MultiIndex::enumerate(2, 3) {
            let c = pair(&DualElement::basis(i.clone()), &g).unwrap();
            rebuilt.add_term(i, c);
        }
        assert_eq!(rebuilt, g);
    }

    #[test]
    fn truncation_guard() {
        let mut x = DualElement::t(1);
        x.truncation = Some(2);
        let h = Hopf::polynomial(1);
        assert!(pair(&x, &h.divided_power(0, 2)).is_ok());
        assert_eq!(
            pair(&x, &h.divided_power(0, 3)),
            Err(Error::TruncationInsufficient {
                needed: 3,
                available: 2
            })
        );
    }

    #[test]
    fn dual_product_examples() {
        assert_eq!(x_mul(&DualElement::t(1), &DualElement::t(2)), DualElement::t(3));
        let x = DualElement::t(4).scale(&rat_int(7));
        assert_eq!(x_mul(&DualElement::t(0), &x), x);
        let a = DualElement::basis(MultiIndex(vec![1, 0]));
        let b = DualElement::basis(MultiIndex(vec![0, 1]));
        assert_eq!(x_mul(&a, &b), DualElement::basis(MultiIndex(vec![1, 1])));
    }

    #[test]
    fn dual_product_duality() {
        // <t_J t_K, D^(I)> = sum over Delta(D^(I)) of <t_J,.><t_K,.>
        for pres in [LiePresentation::abelian(1), LiePresentation::solvable2()] {
            let h = Hopf::new(pres).unwrap();
            for i in MultiIndex::enumerate(h.dim(), 3) {
                for j in MultiIndex::enumerate(h.dim(), 3) {
                    for k in MultiIndex::enumerate(h.dim(), 3) {
                        let lhs = pair(
                            &x_mul(&DualElement::basis(j.clone()), &DualElement::basis(k.clone())),
                            &HopfElement::monomial(i.clone(), Rat::one()),
                        )
                        .unwrap();
                        let mut rhs = Rat::zero();
                        for (slots, c) in h
                            .coproduct(&HopfElement::monomial(i.clone(), Rat::one()), 2)
                            .terms()
                        {
                            let pj = if slots[0] == j { Rat::one() } else { Rat::zero() };
                            let pk = if slots[1] == k { Rat::one() } else { Rat::zero() };
                            rhs += c.clone() * pj * pk;
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn left_action_on_line() {
        let h = Hopf::polynomial(1);
        // D t_n = -n t_{n-1}
        for n in 0..5u32 {
            let r = act(&h, &h.gen(0), &DualElement::t(n), Side::Left).unwrap();
            let expected = if n == 0 {
                DualElement::zero()
            } else {
                DualElement::t(n - 1).scale(&rat_int(-(n as i64)))
            };
            assert_eq!(r, expected);
            assert!(r.truncation.is_none());
        }
        let x = DualElement::t(3).add(&DualElement::t(1));
        assert_eq!(act(&h, &h.one(), &x, Side::Left).unwrap(), x);
        assert_eq!(act(&h, &h.one(), &x, Side::Right).unwrap(), x);
    }

    #[test]
    fn nonabelian_action_is_truncated_and_matches_pairings() {
        let h = Hopf::new(LiePresentation::solvable2()).unwrap();
        let x = DualElement::basis(MultiIndex(vec![0, 1]));
        let r = act(&h, &h.gen(0), &x, Side::Right).unwrap();
        assert_eq!(r.truncation, Some(2));
        for j in MultiIndex::enumerate(2, 2) {
            let direct = right_act_coeff(&h, &h.gen(0), &x, &j).unwrap();
            assert_eq!(r.coeff(&j), direct, "at {}", j);
        }
        assert_eq!(r.coeff(&MultiIndex(vec![0, 1])), Rat::one());
    }

    #[test]
    fn left_action_is_differential_on_products() {
        // h(xy) = (h_(1) x)(h_(2) y) for exact (abelian) data
        let h = Hopf::polynomial(2);
        for hm in MultiIndex::enumerate(2, 2) {
            let he = HopfElement::monomial(hm.clone(), Rat::one());
            for i in MultiIndex::enumerate(2, 2) {
                for j in MultiIndex::enumerate(2, 2) {
                    let x = DualElement::basis(i.clone());
                    let y = DualElement::basis(j.clone());
                    let lhs = act(&h, &he, &x_mul(&x, &y), Side::Left).unwrap();
                    let mut rhs = DualElement::zero();
                    for (slots, c) in h.coproduct(&he, 2).terms() {
                        let hx = act(
                            &h,
                            &HopfElement::monomial(slots[0].clone(), Rat::one()),
                            &x,
                            Side::Left,
                        )
                        .unwrap();
                        let hy = act(
                            &h,
                            &HopfElement::monomial(slots[1].clone(), Rat::one()),
                            &y,
                            Side::Left,
                        )
                        .unwrap();
                        rhs = rhs.add(&x_mul(&hx, &hy).scale(c));
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn bimodule_compatibility() {
        // f(xg) = (fx)g for monomial actors of degree <= 2
        for pres in [LiePresentation::abelian(2), LiePresentation::solvable2()] {
            let h = Hopf::new(pres).unwrap();
            for fm in MultiIndex::enumerate(2, 2) {
                for gm in MultiIndex::enumerate(2, 2) {
                    let fe = HopfElement::monomial(fm.clone(), Rat::one());
                    let ge = HopfElement::monomial(gm.clone(), Rat::one());
                    let x = DualElement::basis(MultiIndex(vec![1, 1]));
                    let xg = act(&h, &ge, &x, Side::Right).unwrap();
                    let lhs = act(&h, &fe, &xg, Side::Left).unwrap();
                    let fx = act(&h, &fe, &x, Side::Left).unwrap();
                    let rhs = act(&h, &ge, &fx, Side::Right).unwrap();
                    let w = match (lhs.truncation, rhs.truncation) {
                        (Some(a), Some(b)) => a.min(b),
                        (Some(a), None) | (None, Some(a)) => a,
                        (None, None) => 6,
                    };
                    for j in MultiIndex::enumerate(2, w) {
                        assert_eq!(lhs.coeff(&j), rhs.coeff(&j), "f={} g={} at {}", fm, gm, j);
                    }
                }
            }
        }
    }

    #[test]
    fn antipode_examples() {
        let h = Hopf::polynomial(1);
        for n in 0..5u32 {
            let sign = if n % 2 == 0 { Rat::one() } else { -Rat::one() };
            assert_eq!(
                x_antipode(&h, &DualElement::t(n)),
                DualElement::t(n).scale(&sign)
            );
        }
        assert_eq!(x_antipode(&h, &DualElement::t(0)), DualElement::t(0));
        let x = DualElement::t(1).add(&DualElement::t(2));
        assert_eq!(x_antipode(&h, &x_antipode(&h, &x)), x);
    }

    #[test]
    fn antipode_is_antihomomorphism_on_duals() {
        let h = Hopf::polynomial(1);
        for a in 0..3u32 {
            for b in 0..3u32 {
                let x = DualElement::t(a);
                let y = DualElement::t(b);
                assert_eq!(
                    x_antipode(&h, &x_mul(&x, &y)),
                    x_mul(&x_antipode(&h, &y), &x_antipode(&h, &x))
                );
            }
        }
    }

    #[test]
    fn coproduct_table_examples() {
        let h = Hopf::polynomial(1);
        let t2 = DualElement::t(2);
        let table = x_coproduct_truncated(&h, &t2, 4).unwrap();
        let at = |j: u32, k: u32| {
            table
                .entries
                .get(&(MultiIndex(vec![j]), MultiIndex(vec![k])))
                .cloned()
                .unwrap_or_else(Rat::zero)
        };
        assert_eq!(at(0, 2), Rat::one());
        // <t_2, D^(1) D^(1)> = <t_2, 2 D^(2)> = 2
        assert_eq!(at(1, 1), rat_int(2));
        assert_eq!(at(2, 0), Rat::one());
        assert_eq!(at(3, 0), Rat::zero());

        let t0 = DualElement::t(0);
        let table0 = x_coproduct_truncated(&h, &t0, 2).unwrap();
        assert_eq!(table0.entries.len(), 1);
        assert_eq!(
            table0.entries.get(&(MultiIndex(vec![0]), MultiIndex(vec![0]))),
            Some(&Rat::one())
        );

        // nonabelian entries picked out by straightened products
        let hs = Hopf::new(LiePresentation::solvable2()).unwrap();
        let ty = DualElement::basis(MultiIndex(vec![0, 1]));
        let t = x_coproduct_truncated(&hs, &ty, 2).unwrap();
        assert_eq!(
            t.entries.get(&(MultiIndex(vec![1, 0]), MultiIndex(vec![0, 1]))),
            None
        );
        assert_eq!(
            t.entries
                .get(&(MultiIndex(vec![0, 1]), MultiIndex(vec![1, 0])))
                .cloned()
                .unwrap(),
            -Rat::one()
        );
    }

    #[test]
    fn coproduct_table_matches_dual_basis_expansion() {
        // Entry (J,K) must agree with the route through the right action:
        // the K-th column of the table is the functional x·D^(K).
        let h = Hopf::new(LiePresentation::solvable2()).unwrap();
        let x = DualElement::basis(MultiIndex(vec![1, 1]));
        let cutoff = 2usize;
        let table = x_coproduct_truncated(&h, &x, cutoff).unwrap();
        for k in MultiIndex::enumerate(2, cutoff) {
            let xk = act(
                &h,
                &h.antipode(&HopfElement::monomial(k.clone(), Rat::one())),
                &x,
                Side::Right,
            )
            .unwrap();
            for j in MultiIndex::enumerate(2, cutoff) {
                if xk.truncation.map(|n| j.degree() > n).unwrap_or(false) {
                    continue;
                }
                let lhs = table
                    .entries
                    .get(&(j.clone(), k.clone()))
                    .cloned()
                    .unwrap_or_else(Rat::zero);
                assert_eq!(lhs, xk.coeff(&j), "at ({}, {})", j, k);
            }
        }
    }

    #[test]
    fn action_support_window_abelian() {
        // support of act(h, t_I) stays within |I| +- deg h
        let h = Hopf::polynomial(2);
        for hm in MultiIndex::enumerate(2, 3) {
            let he = HopfElement::monomial(hm.clone(), Rat::one());
            for i in MultiIndex::enumerate(2, 4) {
                for side in [Side::Left, Side::Right] {
                    let r = act(&h, &he, &DualElement::basis(i.clone()), side).unwrap();
                    for (j, _) in r.terms() {
                        let d = j.degree() as i64;
                        let lo = i.degree() as i64 - hm.degree() as i64;
                        let hi = i.degree() as i64 + hm.degree() as i64;
                        assert!(d >= lo && d <= hi);
                    }
                }
            }
        }
    }
}
