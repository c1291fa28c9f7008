//! Lie H-coalgebras, duality between brackets and cobrackets,
//! pseudo-bialgebra compatibility, the reduced-complex differentials in
//! low degree, coboundary structures and the Yang–Baxter conditions.

use crate::dual::DualElement;
use crate::error::{Error, Result};
use crate::hopf::{Hopf, HopfElement, MultiIndex, Rat, TensorPower};
use crate::lie::{
    check_lie_axioms, tensor_action_element, tensor_action_element3, AxiomFailure, BracketTable,
    Pt,
};
use crate::pseudo::{FreeModuleSignature, HMod, ModuleElement, PseudoTensor, TensorElement};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Cobracket data: delta(a_i) as a two-slot tensor over the signature,
/// extended to H-multiples by delta(h a) = Delta(h) delta(a).
#[derive(Debug, Clone, PartialEq)]
pub struct Cobracket {
    pub signature: FreeModuleSignature,
    pub entries: Vec<TensorElement>,
}

/// An element r of L (x) L, as a two-slot tensor.
pub type RElement = TensorElement;

impl Cobracket {
    pub fn zero(signature: FreeModuleSignature) -> Self {
        let r = signature.rank();
        Cobracket {
            signature,
            entries: vec![TensorElement::zero(2); r],
        }
    }

    pub fn rank(&self) -> usize {
        self.signature.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// delta extended H-linearly to a module element.
    pub fn delta_of(&self, hopf: &Hopf, m: &ModuleElement) -> TensorElement {
        let mut acc = TensorElement::zero(2);
        for (i, c) in m.coeffs.iter().enumerate() {
            if c.is_zero() || self.entries[i].is_zero() {
                continue;
            }
            acc = acc.add(&self.entries[i].act(hopf, c));
        }
        acc
    }

    /// Largest degree of a coefficient monomial in any slot.
    pub fn max_coefficient_degree(&self) -> usize {
        let mut d = 0;
        for e in &self.entries {
            for (key, _) in e.terms() {
                for (idx, _) in key {
                    d = d.max(idx.degree());
                }
            }
        }
        d
    }
}

#[derive(Debug, Clone, Default)]
pub struct CoalgebraReport {
    pub failures: Vec<AxiomFailure>,
    pub checked: usize,
}

impl CoalgebraReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Splices delta applied to one slot of a two-slot tensor, producing a
/// three-slot tensor; `slot` names the expanded position.
fn splice_delta(hopf: &Hopf, c: &Cobracket, w: &TensorElement, slot: usize) -> TensorElement {
    let rank = c.rank();
    let mut out = TensorElement::zero(3);
    for (key, coeff) in w.terms() {
        let kept = key[1 - slot].clone();
        let target = ModuleElement::single(
            rank,
            key[slot].1,
            HopfElement::monomial(key[slot].0.clone(), coeff.clone()),
        );
        let expanded = c.delta_of(hopf, &target);
        for (ekey, ecoeff) in expanded.terms() {
            let triple = if slot == 0 {
                vec![ekey[0].clone(), ekey[1].clone(), kept.clone()]
            } else {
                vec![kept.clone(), ekey[0].clone(), ekey[1].clone()]
            };
            out.add_term(triple, ecoeff.clone());
        }
    }
    out
}

/// Wedge condition and co-Jacobi identity on every generator.
pub fn check_coalgebra(hopf: &Hopf, c: &Cobracket) -> CoalgebraReport {
    let mut report = CoalgebraReport::default();
    for (i, e) in c.entries.iter().enumerate() {
        report.checked += 1;
        let defect = e.add(&e.swap(0, 1));
        if !defect.is_zero() {
            report.failures.push(AxiomFailure {
                axiom: "wedge".into(),
                indices: vec![i],
                witness: format!("{}", defect),
            });
        }
    }
    for (i, e) in c.entries.iter().enumerate() {
        report.checked += 1;
        // (I x delta) delta - tau_12 (I x delta) delta = (delta x I) delta
        let id_delta = splice_delta(hopf, c, e, 1);
        let tau = {
            let mut out = TensorElement::zero(3);
            for (key, coeff) in id_delta.terms() {
                let mut k = key.clone();
                k.swap(0, 1);
                out.add_term(k, coeff.clone());
            }
            out
        };
        let delta_id = splice_delta(hopf, c, e, 0);
        let defect = id_delta.add(&tau.neg()).add(&delta_id.neg());
        if !defect.is_zero() {
            report.failures.push(AxiomFailure {
                axiom: "co-jacobi".into(),
                indices: vec![i],
                witness: format!("{}", defect),
            });
        }
    }
    report
}

/// Dualises a bracket table into a cobracket on the dual basis:
/// delta(a^k) = sum S(h) a^i (x) S(l) a^j over raw terms
/// (h (x) l) @_H a_k of [a_i * a_j].
pub fn dualize_to_cobracket(hopf: &Hopf, table: &BracketTable) -> Result<Cobracket> {
    let pre = check_lie_axioms(hopf, table)?;
    if !pre.passes() {
        return Err(Error::Precondition(format!(
            "input is not a Lie pseudoalgebra: {}",
            pre
        )));
    }
    let r = table.rank();
    let dual_sig = FreeModuleSignature::new(
        table
            .signature
            .labels
            .iter()
            .map(|l| format!("{}*", l))
            .collect(),
    );
    let mut out = Cobracket::zero(dual_sig);
    for i in 0..r {
        for j in 0..r {
            let entry = table.get(i, j)?;
            // canonical (u x 1) @_H (w a_k)  ->  raw (u w_(1) x w_(2)) @_H a_k
            for (key, m) in entry.terms() {
                for (k, w) in m.coeffs.iter().enumerate() {
                    if w.is_zero() {
                        continue;
                    }
                    for (parts, c) in hopf.coproduct(w, 2).terms() {
                        let hh = hopf.mul(
                            &HopfElement::monomial(key[0].clone(), Rat::one()),
                            &HopfElement::monomial(parts[0].clone(), Rat::one()),
                        );
                        let ll = HopfElement::monomial(parts[1].clone(), Rat::one());
                        let sh = hopf.antipode(&hh);
                        let sl = hopf.antipode(&ll);
                        for (hi, hc) in sh.terms() {
                            for (li, lc) in sl.terms() {
                                out.entries[k].add_term(
                                    vec![(hi.clone(), i), (li.clone(), j)],
                                    c.clone() * hc.clone() * lc.clone(),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Rebuilds a pseudobracket on the dual basis from a coalgebra: the
/// x-brackets of dual functionals are assembled from delta and then the
/// bracket is reconstructed from its Fourier coefficients.
///
/// `cutoff` bounds the sampled |I|; nonzero coefficients found in a
/// safety margin beyond it are reported as `CutoffTooSmall`.
pub fn cobracket_to_pseudobracket(
    hopf: &Hopf,
    c: &Cobracket,
    cutoff: usize,
) -> Result<BracketTable> {
    let r = c.rank();
    let dim = hopf.dim();
    let dual_sig = FreeModuleSignature::new(
        c.signature
            .labels
            .iter()
            .map(|l| format!("{}^", l))
            .collect(),
    );
    let mut table = BracketTable::zero(dual_sig);

    // g-coefficient on a_m of the x-bracket [a^i_{t_I} a^j]:
    //   sum over delta(a_m) terms ((A,i),(B,j),c), coproduct entries
    //   (J, A) of t_I, and splits B = B1 + B2 of
    //   c * <t_I, D^(J) D^(A)> * <t_J, S(D^(B2))> * S(D^(B1)).
    let probe = cutoff + 2;
    let mut brackets: Vec<Vec<BTreeMap<MultiIndex, ModuleElement>>> =
        vec![vec![BTreeMap::new(); r]; r];
    for m in 0..r {
        for (key, cc) in c.entries[m].terms() {
            let (ref a_idx, i) = key[0];
            let (ref b_idx, j) = key[1];
            for jj in MultiIndex::enumerate(dim, b_idx.degree()) {
                let prod_ja = hopf.mul(
                    &HopfElement::monomial(jj.clone(), Rat::one()),
                    &HopfElement::monomial(a_idx.clone(), Rat::one()),
                );
                // coefficient of t_I against D^(J) D^(A) for every I at once
                for (ii, ci) in prod_ja.terms() {
                    if ii.degree() > probe {
                        continue;
                    }
                    let mut g = HopfElement::zero();
                    for (b1, b2) in b_idx.splits2() {
                        let s2 = hopf.antipode(&HopfElement::monomial(b2, Rat::one()));
                        let coeff = s2.coeff(&jj);
                        if coeff.is_zero() {
                            continue;
                        }
                        g = g.add(
                            &hopf
                                .antipode(&HopfElement::monomial(b1, Rat::one()))
                                .scale(&coeff),
                        );
                    }
                    if g.is_zero() {
                        continue;
                    }
                    let g = g.scale(&(cc.clone() * ci.clone()));
                    let slot = brackets[i][j].entry(ii.clone()).or_insert_with(|| {
                        ModuleElement::zero(r)
                    });
                    slot.coeffs[m] = slot.coeffs[m].add(&g);
                }
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            brackets[i][j].retain(|_, v| !v.is_zero());
            if let Some(bad) = brackets[i][j]
                .keys()
                .find(|idx| idx.degree() > cutoff)
            {
                return Err(Error::CutoffTooSmall {
                    cutoff,
                    found: bad.degree(),
                });
            }
            let entry = crate::lie::reconstruct_from_fourier(hopf, &brackets[i][j]);
            table.set(i, j, entry);
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Default)]
pub struct CocycleReport {
    pub failures: Vec<AxiomFailure>,
    pub checked: usize,
}

impl CocycleReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compatibility between a bracket and a cobracket:
/// a * delta(b) - (sigma (x)_H 1) b * delta(a) = delta([a * b]).
pub fn check_cocycle(hopf: &Hopf, table: &BracketTable, c: &Cobracket) -> Result<CocycleReport> {
    if table.rank() != c.rank() {
        return Err(Error::SignatureMismatch(
            "bracket and cobracket ranks differ".into(),
        ));
    }
    let r = table.rank();
    let ext = |u: &ModuleElement, v: &ModuleElement| table.extend(hopf, u, v);
    let mut report = CocycleReport::default();
    for i in 0..r {
        let a = table.basis(hopf, i);
        for j in 0..r {
            let b = table.basis(hopf, j);
            report.checked += 1;
            let lhs1 = tensor_action_element(hopf, &ext, &ext, r, r, &a, &c.entries[j])?;
            let lhs2 = tensor_action_element(hopf, &ext, &ext, r, r, &b, &c.entries[i])?
                .swap12(hopf);
            let rhs = table
                .get(i, j)?
                .map_values(|m| c.delta_of(hopf, m));
            let defect = lhs1.add(&lhs2.neg()).add(&rhs.neg());
            if !defect.is_zero() {
                report.failures.push(AxiomFailure {
                    axiom: "cocycle".into(),
                    indices: vec![i, j],
                    witness: format!("{}", defect),
                });
            }
        }
    }
    Ok(report)
}

/// Mixed tensors with interleaved H and module slots, used by the indexed
/// action combinators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotKind {
    Hopf,
    Module,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum MixedKey {
    H(MultiIndex),
    M(MultiIndex, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedTensor {
    pub kinds: Vec<SlotKind>,
    terms: BTreeMap<Vec<MixedKey>, Rat>,
}

impl MixedTensor {
    pub fn new(kinds: Vec<SlotKind>) -> Self {
        MixedTensor {
            kinds,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MixedKey>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<MixedKey>, c: Rat) {
        debug_assert_eq!(key.len(), self.kinds.len());
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.kinds, other.kinds);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MixedTensor {
            kinds: self.kinds.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }

    /// Builds a mixed tensor from a list of slot elements, one of which
    /// may range over H; module slots take free-module elements.
    pub fn from_slots(slots: &[MixedSlot]) -> Self {
        let kinds: Vec<SlotKind> = slots
            .iter()
            .map(|s| match s {
                MixedSlot::H(_) => SlotKind::Hopf,
                MixedSlot::M(_) => SlotKind::Module,
            })
            .collect();
        let mut out = MixedTensor::new(kinds);
        let mut partial: Vec<(Vec<MixedKey>, Rat)> = vec![(Vec::new(), Rat::one())];
        for s in slots {
            let mut next = Vec::new();
            match s {
                MixedSlot::H(h) => {
                    for (key, c) in &partial {
                        for (idx, hc) in h.terms() {
                            let mut k = key.clone();
                            k.push(MixedKey::H(idx.clone()));
                            next.push((k, c.clone() * hc.clone()));
                        }
                    }
                }
                MixedSlot::M(m) => {
                    for (key, c) in &partial {
                        for (b, coeff) in m.coeffs.iter().enumerate() {
                            for (idx, mc) in coeff.terms() {
                                let mut k = key.clone();
                                k.push(MixedKey::M(idx.clone(), b));
                                next.push((k, c.clone() * mc.clone()));
                            }
                        }
                    }
                }
            }
            partial = next;
        }
        for (k, c) in partial {
            out.add_term(k, c);
        }
        out
    }

    /// A tensor with module slots only, reinterpreted as a TensorElement.
    pub fn into_tensor_element(&self) -> TensorElement {
        assert!(self.kinds.iter().all(|k| *k == SlotKind::Module));
        let mut out = TensorElement::zero(self.kinds.len());
        for (key, c) in &self.terms {
            let k: Vec<(MultiIndex, usize)> = key
                .iter()
                .map(|mk| match mk {
                    MixedKey::M(idx, b) => (idx.clone(), *b),
                    MixedKey::H(_) => unreachable!(),
                })
                .collect();
            out.add_term(k, c.clone());
        }
        out
    }
}

#[derive(Debug, Clone)]
pub enum MixedSlot {
    H(HopfElement),
    M(ModuleElement),
}

/// Indexed action combinator: the H element in `slot` acts on the module
/// elements in `targets` (via iterated coproduct components in target
/// order, or via the antipode when `antipode` is set, which requires a
/// single target). The H slot is removed from the result.
pub fn mu_act(
    hopf: &Hopf,
    t: &MixedTensor,
    slot: usize,
    targets: &[usize],
    antipode: bool,
) -> Result<MixedTensor> {
    if t.kinds.get(slot) != Some(&SlotKind::Hopf) {
        return Err(Error::MalformedPattern(format!(
            "slot {} is not an H slot",
            slot
        )));
    }
    if targets.is_empty() || (antipode && targets.len() != 1) {
        return Err(Error::MalformedPattern("bad target list".into()));
    }
    for &tg in targets {
        if t.kinds.get(tg) != Some(&SlotKind::Module) || tg == slot {
            return Err(Error::MalformedPattern(format!(
                "target {} is not a module slot",
                tg
            )));
        }
    }
    let mut kinds = t.kinds.clone();
    kinds.remove(slot);
    let mut out = MixedTensor::new(kinds);
    for (key, c) in &t.terms {
        let h = match &key[slot] {
            MixedKey::H(idx) => HopfElement::monomial(idx.clone(), Rat::one()),
            MixedKey::M(..) => unreachable!(),
        };
        // pieces[t] = element to left-multiply into target t
        let distributions: Vec<(Vec<HopfElement>, Rat)> = if antipode {
            vec![(vec![hopf.antipode(&h)], Rat::one())]
        } else {
            hopf.coproduct(&h, targets.len())
                .terms()
                .map(|(parts, cc)| {
                    (
                        parts
                            .iter()
                            .map(|p| HopfElement::monomial(p.clone(), Rat::one()))
                            .collect(),
                        cc.clone(),
                    )
                })
                .collect()
        };
        for (pieces, cc) in distributions {
            let mut partial: Vec<(Vec<MixedKey>, Rat)> =
                vec![(Vec::new(), c.clone() * cc.clone())];
            for (pos, k) in key.iter().enumerate() {
                if pos == slot {
                    continue;
                }
                let mut next = Vec::new();
                match targets.iter().position(|&tg| tg == pos) {
                    Some(ti) => {
                        let (idx, b) = match k {
                            MixedKey::M(idx, b) => (idx.clone(), *b),
                            MixedKey::H(_) => unreachable!(),
                        };
                        let prod = hopf.mul(
                            &pieces[ti],
                            &HopfElement::monomial(idx, Rat::one()),
                        );
                        for (kk, cp) in &partial {
                            for (pi, pc) in prod.terms() {
                                let mut kv = kk.clone();
                                kv.push(MixedKey::M(pi.clone(), b));
                                next.push((kv, cp.clone() * pc.clone()));
                            }
                        }
                    }
                    None => {
                        for (kk, cp) in &partial {
                            let mut kv = kk.clone();
                            kv.push(k.clone());
                            next.push((kv, cp.clone()));
                        }
                    }
                }
                partial = next;
            }
            for (kv, cp) in partial {
                out.add_term(kv, cp);
            }
        }
    }
    Ok(out)
}

/// The canonical Fourier pairs of a bracket value: [a, b] = sum h_i (x) c_i
/// when [a * b] = sum (h_i x 1) @_H c_i.
pub fn fourier_pairs(p: &Pt) -> Vec<(MultiIndex, ModuleElement)> {
    p.terms().map(|(k, m)| (k[0].clone(), m.clone())).collect()
}

/// Differentials of the reduced complex in low degree, generic over the
/// coefficient module.
pub struct Cochain1<M: HMod> {
    pub values: Vec<M>,
}

pub struct Cochain2<M: HMod> {
    pub values: Vec<Vec<PseudoTensor<M>>>,
}

impl<M: HMod> Cochain2<M> {
    /// Validates skew-symmetry of the stored table.
    pub fn validate(&self, hopf: &Hopf) -> Result<()> {
        let r = self.values.len();
        for i in 0..r {
            for j in 0..r {
                let lhs = &self.values[j][i];
                let rhs = self.values[i][j].swap12(hopf).neg();
                if *lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "cochain is not skew-symmetric at ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(())
    }
}

/// d on 0-cochains: (d(1 @_H m))(a) = sum (id x eps)(h_i) m_i read off the
/// canonical form of a * m.
pub fn differential0<M, F>(hopf: &Hopf, act: F, rank: usize, m: &M) -> Result<Cochain1<M>>
where
    M: HMod,
    F: Fn(&ModuleElement, &M) -> Result<PseudoTensor<M>>,
{
    let mut values = Vec::with_capacity(rank);
    for i in 0..rank {
        let a = ModuleElement::basis(rank, hopf.dim(), i);
        let am = act(&a, m)?;
        let mut acc: Option<M> = None;
        for (key, v) in am.terms() {
            let moved = v.act(hopf, &HopfElement::monomial(key[0].clone(), Rat::one()));
            acc = Some(match acc {
                None => moved,
                Some(old) => old.add(&moved),
            });
        }
        values.push(acc.unwrap_or_else(|| {
            // a zero value of the right shape
            m.scale(&Rat::zero())
        }));
    }
    Ok(Cochain1 { values })
}

/// gamma extended H-linearly to a module element (degree-1 cochains).
fn cochain1_at<M: HMod>(hopf: &Hopf, gamma: &Cochain1<M>, c: &ModuleElement) -> M {
    let mut acc: Option<M> = None;
    for (m, w) in gamma.values.iter().zip(&c.coeffs) {
        if w.is_zero() {
            continue;
        }
        let v = m.act(hopf, w);
        acc = Some(match acc {
            None => v,
            Some(old) => old.add(&v),
        });
    }
    acc.unwrap_or_else(|| gamma.values[0].scale(&Rat::zero()))
}

/// d on 1-cochains:
/// (d gamma)(a x b) = a*gamma(b) - sigma_12 (b*gamma(a)) - gamma([a*b]).
pub fn differential1<M, F>(
    hopf: &Hopf,
    act: F,
    table: &BracketTable,
    gamma: &Cochain1<M>,
) -> Result<Cochain2<M>>
where
    M: HMod,
    F: Fn(&ModuleElement, &M) -> Result<PseudoTensor<M>>,
{
    let r = table.rank();
    if gamma.values.len() != r {
        return Err(Error::SignatureMismatch(
            "cochain length differs from table rank".into(),
        ));
    }
    let mut values = vec![vec![PseudoTensor::zero(2); r]; r];
    for i in 0..r {
        let a = table.basis(hopf, i);
        for j in 0..r {
            let b = table.basis(hopf, j);
            let t1 = act(&a, &gamma.values[j])?;
            let t2 = act(&b, &gamma.values[i])?.swap12(hopf);
            let mut t3: PseudoTensor<M> = PseudoTensor::zero(2);
            for (key, c_ab) in table.get(i, j)?.terms() {
                t3.accumulate(key.clone(), cochain1_at(hopf, gamma, c_ab));
            }
            values[i][j] = t1.add(&t2.neg()).add(&t3.neg());
        }
    }
    Ok(Cochain2 { values })
}

/// gamma on (module element x basis) for 2-cochains, H-polylinearly in the
/// first argument.
fn cochain2_at<M: HMod>(
    hopf: &Hopf,
    gamma: &Cochain2<M>,
    c: &ModuleElement,
    s: usize,
) -> PseudoTensor<M> {
    let mut acc: PseudoTensor<M> = PseudoTensor::zero(2);
    for (m, w) in c.coeffs.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        acc = acc.add(
            &gamma.values[m][s].mul_slots(hopf, &TensorPower::pure(&[w.clone(), hopf.one()])),
        );
    }
    acc
}

/// d on 2-cochains, producing values on basis triples.
pub fn differential2<M, F>(
    hopf: &Hopf,
    act: F,
    table: &BracketTable,
    gamma: &Cochain2<M>,
    triple: (usize, usize, usize),
) -> Result<PseudoTensor<M>>
where
    M: HMod,
    F: Fn(&ModuleElement, &M) -> Result<PseudoTensor<M>>,
{
    gamma.validate(hopf)?;
    let (p, q, s) = triple;
    let basis = |i: usize| table.basis(hopf, i);
    let mut acc: PseudoTensor<M> = PseudoTensor::zero(3);

    // single terms: (-1)^{i+1} sigma_{1->i} a_i * gamma(rest)
    let singles = [
        (p, (q, s), Rat::one(), vec![0usize, 1, 2]),
        (q, (p, s), -Rat::one(), vec![1, 0, 2]),
        (s, (p, q), Rat::one(), vec![2, 0, 1]),
    ];
    for (actor, (u, v), sign, perm) in singles {
        let a = basis(actor);
        let gval = &gamma.values[u][v];
        let mut term: PseudoTensor<M> = PseudoTensor::zero(3);
        for (gkey, gv) in gval.terms() {
            let av = act(&a, gv)?;
            for (akey, cv) in av.terms() {
                term.accumulate(vec![akey[0].clone(), gkey[0].clone()], cv.clone());
            }
        }
        acc = acc.add(&term.permute(hopf, &perm).scale(&sign));
    }

    // pair terms: (-1)^{i+j} sigma_{1->i,2->j} gamma([a_i*a_j] x rest)
    let pairs = [
        ((p, q), s, -Rat::one(), vec![0usize, 1, 2]),
        ((p, s), q, Rat::one(), vec![0, 2, 1]),
        ((q, s), p, -Rat::one(), vec![1, 2, 0]),
    ];
    for ((u, v), rest, sign, perm) in pairs {
        let mut term: PseudoTensor<M> = PseudoTensor::zero(3);
        for (bkey, c_ab) in table.get(u, v)?.terms() {
            let gval = cochain2_at(hopf, gamma, c_ab, rest);
            for (gkey, gv) in gval.terms() {
                // (u x 1 x 1)(Delta x id)(w x 1) = (u w_(1) x w_(2) x 1)
                let w = HopfElement::monomial(gkey[0].clone(), Rat::one());
                for (parts, cc) in hopf.coproduct(&w, 2).terms() {
                    let prod = hopf.mul(
                        &HopfElement::monomial(bkey[0].clone(), Rat::one()),
                        &HopfElement::monomial(parts[0].clone(), Rat::one()),
                    );
                    for (pi, pc) in prod.terms() {
                        term.accumulate(
                            vec![pi.clone(), parts[1].clone()],
                            gv.scale(&(cc.clone() * pc.clone())),
                        );
                    }
                }
            }
        }
        acc = acc.add(&term.permute(hopf, &perm).scale(&sign));
    }
    Ok(acc)
}

/// The coboundary cobracket delta_r(a) = mu([a, a_i] x b_i) +
/// mu-after-swap(a_i x [a, b_i]), i.e. the degree-0 differential of r
/// with coefficients in L (x) L.
pub fn coboundary_delta(hopf: &Hopf, table: &BracketTable, r: &RElement) -> Result<Cobracket> {
    let rank = table.rank();
    let ext = |u: &ModuleElement, v: &ModuleElement| table.extend(hopf, u, v);
    let act = |a: &ModuleElement, w: &TensorElement| {
        tensor_action_element(hopf, &ext, &ext, rank, rank, a, w)
    };
    let d = differential0(hopf, act, rank, r)?;
    Ok(Cobracket {
        signature: table.signature.clone(),
        entries: d.values,
    })
}

/// Normal form of a three-slot tensor modulo H_+ · (L x L x L): the last
/// slot is emptied through the two-part coproduct,
/// (f x g x h) -> sum S(h_(1)) f x S(h_(2)) g x 1.
/// The antipode factors multiply on the left: the quotient is by the left
/// diagonal action.
pub fn hplus_reduce(hopf: &Hopf, w: &TensorElement) -> TensorElement {
    assert_eq!(w.slots, 3);
    let mut out = TensorElement::zero(3);
    for (key, c) in w.terms() {
        let (ref cidx, k) = key[2];
        if cidx.is_zero() {
            out.add_term(key.clone(), c.clone());
            continue;
        }
        let h = HopfElement::monomial(cidx.clone(), Rat::one());
        for (parts, cc) in hopf.coproduct(&h, 2).terms() {
            let s1 = hopf.antipode(&HopfElement::monomial(parts[0].clone(), Rat::one()));
            let s2 = hopf.antipode(&HopfElement::monomial(parts[1].clone(), Rat::one()));
            let f = hopf.mul(
                &s1,
                &HopfElement::monomial(key[0].0.clone(), Rat::one()),
            );
            let g = hopf.mul(
                &s2,
                &HopfElement::monomial(key[1].0.clone(), Rat::one()),
            );
            for (fi, fc) in f.terms() {
                for (gi, gc) in g.terms() {
                    out.add_term(
                        vec![
                            (fi.clone(), key[0].1),
                            (gi.clone(), key[1].1),
                            (MultiIndex::zero(hopf.dim()), k),
                        ],
                        c.clone() * cc.clone() * fc.clone() * gc.clone(),
                    );
                }
            }
        }
    }
    out
}

/// The squared bracket of r against itself:
/// [[r,r]] = mu_{-1}^3([a_j,a_i] x b_j x b_i)
///         - mu_{-2}^4(a_i x [a_j,b_i] x b_j)
///         - mu_{-3}^2(a_i x a_j x [b_j,b_i]).
pub fn double_bracket(hopf: &Hopf, table: &BracketTable, r: &RElement) -> Result<TensorElement> {
    let rank = table.rank();
    // decompose r into pure pairs with the coefficient folded left
    let mut pairs: Vec<(ModuleElement, ModuleElement)> = Vec::new();
    for (key, c) in r.terms() {
        pairs.push((
            ModuleElement::single(rank, key[0].1, HopfElement::monomial(key[0].0.clone(), c.clone())),
            ModuleElement::single(rank, key[1].1, HopfElement::monomial(key[1].0.clone(), Rat::one())),
        ));
    }
    let bracket = |u: &ModuleElement, v: &ModuleElement| -> Result<Vec<(MultiIndex, ModuleElement)>> {
        Ok(fourier_pairs(&table.extend(hopf, u, v)?))
    };
    let mut acc = TensorElement::zero(3);
    for (ai, bi) in &pairs {
        for (aj, bj) in &pairs {
            // mu_{-1}^3([a_j, a_i] x b_j x b_i): S(h) acts on slot 3
            for (h, c) in bracket(aj, ai)? {
                let t = MixedTensor::from_slots(&[
                    MixedSlot::H(HopfElement::monomial(h, Rat::one())),
                    MixedSlot::M(c),
                    MixedSlot::M(bj.clone()),
                    MixedSlot::M(bi.clone()),
                ]);
                let acted = mu_act(hopf, &t, 0, &[2], true)?;
                acc = acc.add(&acted.into_tensor_element());
            }
            // - mu_{-2}^4(a_i x [a_j, b_i] x b_j): S(h) acts on slot 4
            for (h, c) in bracket(aj, bi)? {
                let t = MixedTensor::from_slots(&[
                    MixedSlot::M(ai.clone()),
                    MixedSlot::H(HopfElement::monomial(h, Rat::one())),
                    MixedSlot::M(c),
                    MixedSlot::M(bj.clone()),
                ]);
                let acted = mu_act(hopf, &t, 1, &[3], true)?;
                acc = acc.add(&acted.into_tensor_element().neg());
            }
            // - mu_{-3}^2(a_i x a_j x [b_j, b_i]): S(h) acts on slot 2
            for (h, c) in bracket(bj, bi)? {
                let t = MixedTensor::from_slots(&[
                    MixedSlot::M(ai.clone()),
                    MixedSlot::M(aj.clone()),
                    MixedSlot::H(HopfElement::monomial(h, Rat::one())),
                    MixedSlot::M(c),
                ]);
                let acted = mu_act(hopf, &t, 2, &[1], true)?;
                acc = acc.add(&acted.into_tensor_element().neg());
            }
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct CybeReport {
    /// delta_{r + r21} vanishes (the symmetric part is invariant).
    pub invariance: bool,
    /// [[r,r]] as a three-slot tensor.
    pub rr: TensorElement,
    /// mu_3(a . [[r,r]]) = 0 for every basis a.
    pub cybe_mod: bool,
    /// [[r,r]] = 0 modulo H_+ (L x L x L), together with invariance.
    pub quasitriangular: bool,
    /// delta_r passes the coalgebra axioms.
    pub delta_coalgebra: bool,
    /// (table, delta_r) passes the cocycle condition.
    pub delta_cocycle: bool,
    /// The two routes agree: invariance and the modified equation hold
    /// exactly when delta_r is a bialgebra cobracket.
    pub biconditional_consistent: bool,
}

/// Coboundary analysis of r over a bracket table, comparing the
/// invariance + modified Yang-Baxter route with the direct coalgebra +
/// cocycle route.
pub fn cybe_check(hopf: &Hopf, table: &BracketTable, r: &RElement) -> Result<CybeReport> {
    let rank = table.rank();
    let sym = r.add(&r.swap(0, 1));
    let invariance = coboundary_delta(hopf, table, &sym)?.is_zero();

    let rr = double_bracket(hopf, table, r)?;

    let ext = |u: &ModuleElement, v: &ModuleElement| table.extend(hopf, u, v);
    let mut cybe_mod = true;
    for i in 0..rank {
        let a = table.basis(hopf, i);
        let action = tensor_action_element3(hopf, &ext, rank, &a, &rr)?;
        let mut total = TensorElement::zero(3);
        for (key, w) in action.terms() {
            total =
                total.add(&w.act(hopf, &HopfElement::monomial(key[0].clone(), Rat::one())));
        }
        if !total.is_zero() {
            cybe_mod = false;
            break;
        }
    }

    let quasitriangular = invariance && hplus_reduce(hopf, &rr).is_zero();

    let delta = coboundary_delta(hopf, table, r)?;
    let delta_coalgebra = check_coalgebra(hopf, &delta).passes();
    let delta_cocycle = check_cocycle(hopf, table, &delta)?.passes();
    let biconditional_consistent = (invariance && cybe_mod) == (delta_coalgebra && delta_cocycle);

    Ok(CybeReport {
        invariance,
        rr,
        cybe_mod,
        quasitriangular,
        delta_coalgebra,
        delta_cocycle,
        biconditional_consistent,
    })
}

impl fmt::Display for CybeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invariance={} cybe_mod={} quasitriangular={} coalgebra={} cocycle={} consistent={}",
            self.invariance,
            self.cybe_mod,
            self.quasitriangular,
            self.delta_coalgebra,
            self.delta_cocycle,
            self.biconditional_consistent
        )
    }
}
