//! Pseudobracket structures on free finite H-modules: bilinear extension,
//! composition, the Lie axioms, the conformal (x-bracket) formulation,
//! tensor modules and the dual module construction.

use crate::dual::{pair, DualElement};
use crate::error::{Error, Result};
use crate::hopf::{Hopf, HopfElement, MultiIndex, Rat, TensorPower};
use crate::pseudo::{FreeModuleSignature, HMod, ModuleElement, PseudoTensor, TensorElement};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Pt = PseudoTensor<ModuleElement>;

/// Pseudobracket data on a free module: entry (i, j) holds [a_i * a_j] in
/// canonical form.
///
/// A table may carry a degree window: entries whose generator degrees sum
/// beyond the window are not representable (the bracket escapes the
/// stored basis) and reads of them fail with `WindowTooSmall`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketTable {
    pub signature: FreeModuleSignature,
    entries: Vec<Vec<Pt>>,
    pub gen_degrees: Vec<usize>,
    pub window: Option<usize>,
}

impl BracketTable {
    pub fn zero(signature: FreeModuleSignature) -> Self {
        let r = signature.rank();
        BracketTable {
            signature,
            entries: vec![vec![PseudoTensor::zero(2); r]; r],
            gen_degrees: vec![0; r],
            window: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.signature.rank()
    }

    pub fn set(&mut self, i: usize, j: usize, value: Pt) {
        self.entries[i][j] = value;
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&Pt> {
        if let Some(w) = self.window {
            if self.gen_degrees[i] + self.gen_degrees[j] > w {
                return Err(Error::WindowTooSmall {
                    left: self.gen_degrees[i],
                    right: self.gen_degrees[j],
                    window: w,
                });
            }
        }
        Ok(&self.entries[i][j])
    }

    /// Largest degree of a first-slot monomial over all entries.
    pub fn max_coefficient_degree(&self) -> usize {
        let mut d = 0;
        for row in &self.entries {
            for e in row {
                for (key, _) in e.terms() {
                    d = d.max(key[0].degree());
                }
            }
        }
        d
    }

    /// Largest degree of a module-side H-coefficient over all entries.
    pub fn max_module_degree(&self) -> usize {
        let mut d = 0;
        for row in &self.entries {
            for e in row {
                for (_, m) in e.terms() {
                    for c in &m.coeffs {
                        d = d.max(c.degree().max(0) as usize);
                    }
                }
            }
        }
        d
    }

    /// H-bilinear extension of the table to arbitrary module elements.
    pub fn extend(&self, hopf: &Hopf, u: &ModuleElement, v: &ModuleElement) -> Result<Pt> {
        if u.rank() != self.rank() || v.rank() != self.rank() {
            return Err(Error::SignatureMismatch(format!(
                "expected rank {}, got {} and {}",
                self.rank(),
                u.rank(),
                v.rank()
            )));
        }
        let mut acc = PseudoTensor::zero(2);
        for (i, ci) in u.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in v.coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let base = self.get(i, j)?;
                if base.is_zero() {
                    continue;
                }
                acc = acc.add(&base.mul_slots(hopf, &TensorPower::pure(&[ci.clone(), cj.clone()])));
            }
        }
        Ok(acc)
    }

    pub fn basis(&self, hopf: &Hopf, i: usize) -> ModuleElement {
        ModuleElement::basis(self.rank(), hopf.dim(), i)
    }
}

/// Action of a pseudoalgebra on a free module: entry (i, m) holds
/// a_i * b_m in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleActionTable {
    pub actor: FreeModuleSignature,
    pub target: FreeModuleSignature,
    entries: Vec<Vec<Pt>>,
}

impl ModuleActionTable {
    pub fn zero(actor: FreeModuleSignature, target: FreeModuleSignature) -> Self {
        let entries = vec![vec![PseudoTensor::zero(2); target.rank()]; actor.rank()];
        ModuleActionTable {
            actor,
            target,
            entries,
        }
    }

    /// The adjoint action of a bracket table on its own module.
    pub fn adjoint(table: &BracketTable) -> Result<Self> {
        if table.window.is_some() {
            for i in 0..table.rank() {
                for j in 0..table.rank() {
                    table.get(i, j)?;
                }
            }
        }
        Ok(ModuleActionTable {
            actor: table.signature.clone(),
            target: table.signature.clone(),
            entries: table.entries.clone(),
        })
    }

    pub fn set(&mut self, i: usize, m: usize, value: Pt) {
        self.entries[i][m] = value;
    }

    pub fn get(&self, i: usize, m: usize) -> &Pt {
        &self.entries[i][m]
    }

    pub fn extend(&self, hopf: &Hopf, u: &ModuleElement, v: &ModuleElement) -> Result<Pt> {
        if u.rank() != self.actor.rank() || v.rank() != self.target.rank() {
            return Err(Error::SignatureMismatch(format!(
                "expected ranks {} and {}, got {} and {}",
                self.actor.rank(),
                self.target.rank(),
                u.rank(),
                v.rank()
            )));
        }
        let mut acc = PseudoTensor::zero(2);
        for (i, ci) in u.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (m, cm) in v.coeffs.iter().enumerate() {
                if cm.is_zero() {
                    continue;
                }
                let base = &self.entries[i][m];
                if base.is_zero() {
                    continue;
                }
                acc = acc.add(&base.mul_slots(hopf, &TensorPower::pure(&[ci.clone(), cm.clone()])));
            }
        }
        Ok(acc)
    }
}

/// Left composition (a*b)*c: feeds canonical terms of a*b through the
/// second map, inserting Sweedler components of its coefficients into the
/// first two slots.
pub fn compose_left<F, G>(
    hopf: &Hopf,
    first: F,
    second: G,
    a: &ModuleElement,
    b: &ModuleElement,
    c: &ModuleElement,
) -> Result<Pt>
where
    F: Fn(&ModuleElement, &ModuleElement) -> Result<Pt>,
    G: Fn(&ModuleElement, &ModuleElement) -> Result<Pt>,
{
    let ab = first(a, b)?;
    let mut acc = PseudoTensor::zero(3);
    for (key, c_ab) in ab.terms() {
        let h_alpha = &key[0];
        let inner = second(c_ab, c)?;
        for (ikey, e) in inner.terms() {
            let u = HopfElement::monomial(ikey[0].clone(), Rat::one());
            for (parts, cc) in hopf.coproduct(&u, 2).terms() {
                let prod = hopf.mul(
                    &HopfElement::monomial(h_alpha.clone(), Rat::one()),
                    &HopfElement::monomial(parts[0].clone(), Rat::one()),
                );
                for (p, cp) in prod.terms() {
                    acc.accumulate(
                        vec![p.clone(), parts[1].clone()],
                        e.scale(&(cc.clone() * cp.clone())),
                    );
                }
            }
        }
    }
    Ok(acc)
}

/// Right composition a*(b*c): with canonical inner data the result keys
/// are (outer coefficient, inner coefficient, 1) directly.
pub fn compose_right<F, G>(
    _hopf: &Hopf,
    outer: F,
    inner: G,
    a: &ModuleElement,
    b: &ModuleElement,
    c: &ModuleElement,
) -> Result<Pt>
where
    F: Fn(&ModuleElement, &ModuleElement) -> Result<Pt>,
    G: Fn(&ModuleElement, &ModuleElement) -> Result<Pt>,
{
    let bc = inner(b, c)?;
    let mut acc = PseudoTensor::zero(3);
    for (key, d_alpha) in bc.terms() {
        let h_alpha = &key[0];
        let ad = outer(a, d_alpha)?;
        for (okey, e) in ad.terms() {
            acc.accumulate(vec![okey[0].clone(), h_alpha.clone()], e.clone());
        }
    }
    Ok(acc)
}

/// One failed axiom instance with its nonzero defect, rendered.
#[derive(Debug, Clone)]
pub struct AxiomFailure {
    pub axiom: String,
    pub indices: Vec<usize>,
    pub witness: String,
}

#[derive(Debug, Clone, Default)]
pub struct LieReport {
    pub failures: Vec<AxiomFailure>,
    pub checked_pairs: usize,
    pub checked_triples: usize,
    pub skipped: usize,
}

impl LieReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for LieReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passes() {
            write!(
                f,
                "ok ({} pairs, {} triples checked{})",
                self.checked_pairs,
                self.checked_triples,
                if self.skipped > 0 {
                    format!(", {} skipped by window", self.skipped)
                } else {
                    String::new()
                }
            )
        } else {
            for fail in &self.failures {
                writeln!(
                    f,
                    "{} fails at {:?}: {}",
                    fail.axiom, fail.indices, fail.witness
                )?;
            }
            Ok(())
        }
    }
}

/// Checks skew-commutativity and the Jacobi identity on all basis pairs
/// and triples (within the degree window, for windowed tables).
pub fn check_lie_axioms(hopf: &Hopf, table: &BracketTable) -> Result<LieReport> {
    let r = table.rank();
    let mut report = LieReport::default();
    let windowed = table.window.is_some();
    fn skip_or_fail(windowed: bool, e: Error, skipped: &mut usize) -> Result<()> {
        match e {
            Error::WindowTooSmall { .. } if windowed => {
                *skipped += 1;
                Ok(())
            }
            other => Err(other),
        }
    }

    for i in 0..r {
        for j in 0..r {
            let lhs = match table.get(j, i) {
                Ok(v) => v.clone(),
                Err(e) => {
                    skip_or_fail(windowed, e, &mut report.skipped)?;
                    continue;
                }
            };
            let rhs = match table.get(i, j) {
                Ok(v) => v.swap12(hopf).neg(),
                Err(e) => {
                    skip_or_fail(windowed, e, &mut report.skipped)?;
                    continue;
                }
            };
            report.checked_pairs += 1;
            let defect = lhs.add(&rhs.neg());
            if !defect.is_zero() {
                report.failures.push(AxiomFailure {
                    axiom: "skew-commutativity".into(),
                    indices: vec![i, j],
                    witness: format!("{}", defect),
                });
            }
        }
    }

    let ext = |u: &ModuleElement, v: &ModuleElement| table.extend(hopf, u, v);
    for i in 0..r {
        let a = table.basis(hopf, i);
        for j in 0..r {
            let b = table.basis(hopf, j);
            for k in 0..r {
                let c = table.basis(hopf, k);
                let lhs1 = compose_right(hopf, &ext, &ext, &a, &b, &c);
                let lhs2 = compose_right(hopf, &ext, &ext, &b, &a, &c);
                let rhs = compose_left(hopf, &ext, &ext, &a, &b, &c);
                match (lhs1, lhs2, rhs) {
                    (Ok(l1), Ok(l2), Ok(rh)) => {
                        report.checked_triples += 1;
                        let defect = l1
                            .add(&l2.permute(hopf, &[1, 0, 2]).neg())
                            .add(&rh.neg());
                        if !defect.is_zero() {
                            report.failures.push(AxiomFailure {
                                axiom: "jacobi".into(),
                                indices: vec![i, j, k],
                                witness: format!("{}", defect),
                            });
                        }
                    }
                    (a_r, b_r, c_r) => {
                        for e in [a_r.err(), b_r.err(), c_r.err()].into_iter().flatten() {
                            skip_or_fail(windowed, e, &mut report.skipped)?;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Representation axiom for an action table over a bracket table.
pub fn check_representation(
    hopf: &Hopf,
    table: &BracketTable,
    action: &ModuleActionTable,
) -> Result<LieReport> {
    let mut report = LieReport::default();
    let ext_l = |u: &ModuleElement, v: &ModuleElement| table.extend(hopf, u, v);
    let ext_a = |u: &ModuleElement, v: &ModuleElement| action.extend(hopf, u, v);
    for i in 0..table.rank() {
        let a = table.basis(hopf, i);
        for j in 0..table.rank() {
            let b = table.basis(hopf, j);
            for m in 0..action.target.rank() {
                let v = ModuleElement::basis(action.target.rank(), hopf.dim(), m);
                let l1 = compose_right(hopf, &ext_a, &ext_a, &a, &b, &v)?;
                let l2 = compose_right(hopf, &ext_a, &ext_a, &b, &a, &v)?;
                let rh = compose_left(hopf, &ext_l, &ext_a, &a, &b, &v)?;
                report.checked_triples += 1;
                let defect = l1.add(&l2.permute(hopf, &[1, 0, 2]).neg()).add(&rh.neg());
                if !defect.is_zero() {
                    report.failures.push(AxiomFailure {
                        axiom: "representation".into(),
                        indices: vec![i, j, m],
                        witness: format!("{}", defect),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// All Fourier coefficients of a canonical pseudotensor at once: the map
/// I -> [._{t_I}.], i.e. sum_a <S(t_I), h_a> m_a collected per index.
pub fn fourier_coefficients<M: HMod>(
    hopf: &Hopf,
    p: &PseudoTensor<M>,
) -> BTreeMap<MultiIndex, M> {
    let mut acc: BTreeMap<MultiIndex, M> = BTreeMap::new();
    for (key, m) in p.terms() {
        let s = hopf.antipode(&HopfElement::monomial(key[0].clone(), Rat::one()));
        for (idx, c) in s.terms() {
            let scaled = m.scale(c);
            match acc.remove(idx) {
                None => {
                    acc.insert(idx.clone(), scaled);
                }
                Some(old) => {
                    let sum = old.add(&scaled);
                    if !sum.is_zero() {
                        acc.insert(idx.clone(), sum);
                    }
                }
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// Single Fourier coefficient of a canonical pseudotensor against x.
pub fn fourier_coefficient<M: HMod>(
    hopf: &Hopf,
    p: &PseudoTensor<M>,
    x: &DualElement,
) -> Result<Option<M>> {
    let mut acc: Option<M> = None;
    for (key, m) in p.terms() {
        let s = hopf.antipode(&HopfElement::monomial(key[0].clone(), Rat::one()));
        let c = pair(x, &s)?;
        if c.is_zero() {
            continue;
        }
        let scaled = m.scale(&c);
        acc = Some(match acc {
            None => scaled,
            Some(old) => old.add(&scaled),
        });
    }
    Ok(acc.filter(|v| !v.is_zero()))
}

/// x-bracket [a_x b] = sum <S(x), h_i> c_i over the canonical bracket.
pub fn x_bracket(
    hopf: &Hopf,
    table: &BracketTable,
    a: &ModuleElement,
    x: &DualElement,
    b: &ModuleElement,
) -> Result<ModuleElement> {
    let p = table.extend(hopf, a, b)?;
    Ok(fourier_coefficient(hopf, &p, x)?.unwrap_or_else(|| ModuleElement::zero(table.rank())))
}

/// Reconstruction of a pseudobracket value from its Fourier
/// coefficients: sum_I (S(D^(I)) x 1) @_H [a_{t_I} b].
pub fn reconstruct_from_fourier(
    hopf: &Hopf,
    coefficients: &BTreeMap<MultiIndex, ModuleElement>,
) -> Pt {
    let mut acc = PseudoTensor::zero(2);
    for (i, m) in coefficients {
        let s = hopf.antipode(&HopfElement::monomial(i.clone(), Rat::one()));
        for (idx, c) in s.terms() {
            acc.accumulate(vec![idx.clone()], m.scale(c));
        }
    }
    acc
}

#[derive(Debug, Clone, Default)]
pub struct ConformalReport {
    /// Largest |I| with [a_i t_I a_j] nonzero, per pair; -1 when all vanish.
    pub locality: BTreeMap<(usize, usize), i64>,
    pub failures: Vec<AxiomFailure>,
    pub checked: usize,
}

impl ConformalReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies the conformal-algebra formulation: locality certificates,
/// sesquilinearity in both arguments, skew-commutativity and the Jacobi
/// identity of the x-brackets, sampling x = t_I up to `sample_degree`.
pub fn check_conformal_axioms(
    hopf: &Hopf,
    table: &BracketTable,
    sample_degree: usize,
) -> Result<ConformalReport> {
    let r = table.rank();
    let dim = hopf.dim();
    let mut report = ConformalReport::default();
    let windowed = table.window.is_some();

    let mut fc: BTreeMap<(usize, usize), BTreeMap<MultiIndex, ModuleElement>> = BTreeMap::new();
    for i in 0..r {
        for j in 0..r {
            match table.get(i, j) {
                Ok(p) => {
                    let coeffs = fourier_coefficients(hopf, p);
                    let bound = coeffs.keys().map(|k| k.degree() as i64).max().unwrap_or(-1);
                    report.locality.insert((i, j), bound);
                    fc.insert((i, j), coeffs);
                }
                Err(Error::WindowTooSmall { .. }) if windowed => {}
                Err(e) => return Err(e),
            }
        }
    }
    // The second Sweedler leg of x is capped by entry coefficient degrees;
    // the first leg also picks up inner module coefficients.
    let cutoff = table.max_coefficient_degree() + table.max_module_degree();
    let samples = MultiIndex::enumerate(dim, sample_degree);
    let actors: Vec<MultiIndex> = MultiIndex::enumerate(dim, 2);

    let in_window = |ix: &[usize]| -> bool {
        match table.window {
            None => true,
            Some(w) => {
                let total: usize = ix.iter().map(|&i| table.gen_degrees[i]).sum();
                total <= w
            }
        }
    };

    for i in 0..r {
        let a = table.basis(hopf, i);
        for j in 0..r {
            if !in_window(&[i, j]) {
                continue;
            }
            let b = table.basis(hopf, j);
            let entry = fc.get(&(i, j)).expect("within window");
            let entry_ji = fc.get(&(j, i)).expect("within window");

            for x in &samples {
                let tx = DualElement::basis(x.clone());
                report.checked += 1;

                for hm in &actors {
                    let he = HopfElement::monomial(hm.clone(), Rat::one());
                    // first argument: [ha_x b] = [a_{xh} b]
                    let ha = ModuleElement::single(r, i, he.clone());
                    let lhs = x_bracket(hopf, table, &ha, &tx, &b)?;
                    let mut rhs = ModuleElement::zero(r);
                    for (key, c_ab) in table.get(i, j)?.terms() {
                        let prod = hopf.mul(
                            &hopf.antipode(&HopfElement::monomial(key[0].clone(), Rat::one())),
                            &hopf.antipode(&he),
                        );
                        let c = pair(&tx, &prod)?;
                        if !c.is_zero() {
                            rhs = rhs.add(&c_ab.scale(&c));
                        }
                    }
                    if lhs != rhs {
                        report.failures.push(AxiomFailure {
                            axiom: "sesquilinearity-left".into(),
                            indices: vec![i, j],
                            witness: format!("h={} x=t{} lhs={} rhs={}", hm, x, lhs, rhs),
                        });
                    }

                    // second argument: [a_x hb] = h_(2) [a_{h_(-1)x} b]
                    let hb = ModuleElement::single(r, j, he.clone());
                    let lhs = x_bracket(hopf, table, &a, &tx, &hb)?;
                    let mut rhs = ModuleElement::zero(r);
                    for (parts, cc) in hopf.coproduct(&he, 2).terms() {
                        let h1 = HopfElement::monomial(parts[0].clone(), Rat::one());
                        let h2 = HopfElement::monomial(parts[1].clone(), Rat::one());
                        for (key, c_ab) in table.get(i, j)?.terms() {
                            // <S(S(h_(1))x), h_a> = <x, h_(1) S(h_a)>
                            let prod = hopf.mul(
                                &h1,
                                &hopf.antipode(&HopfElement::monomial(
                                    key[0].clone(),
                                    Rat::one(),
                                )),
                            );
                            let c = pair(&tx, &prod)?;
                            if !c.is_zero() {
                                rhs = rhs.add(&c_ab.act(hopf, &h2).scale(&(c * cc.clone())));
                            }
                        }
                    }
                    if lhs != rhs {
                        report.failures.push(AxiomFailure {
                            axiom: "sesquilinearity-right".into(),
                            indices: vec![i, j],
                            witness: format!("h={} x=t{}", hm, x),
                        });
                    }
                }

                // skew-commutativity of x-brackets
                let lhs = entry
                    .get(x)
                    .cloned()
                    .unwrap_or_else(|| ModuleElement::zero(r));
                let mut rhs = ModuleElement::zero(r);
                for (idx, br) in entry_ji {
                    let u = HopfElement::monomial(idx.clone(), Rat::one());
                    for (parts, cc) in hopf.coproduct(&u, 2).terms() {
                        let sa =
                            hopf.antipode(&HopfElement::monomial(parts[0].clone(), Rat::one()));
                        let c = pair(&tx, &sa)?;
                        if c.is_zero() {
                            continue;
                        }
                        let sb =
                            hopf.antipode(&HopfElement::monomial(parts[1].clone(), Rat::one()));
                        rhs = rhs.add(&br.act(hopf, &sb).scale(&(-c * cc.clone())));
                    }
                }
                if lhs != rhs {
                    report.failures.push(AxiomFailure {
                        axiom: "skew-commutativity-x".into(),
                        indices: vec![i, j],
                        witness: format!("x=t{} lhs={} rhs={}", x, lhs, rhs),
                    });
                }
            }
        }
    }

    // Jacobi identity of the x-brackets
    for i in 0..r {
        let a = table.basis(hopf, i);
        for j in 0..r {
            let b = table.basis(hopf, j);
            for k in 0..r {
                if !in_window(&[i, j, k]) {
                    continue;
                }
                let c = table.basis(hopf, k);
                for x in &samples {
                    let tx = DualElement::basis(x.clone());
                    let cop = crate::dual::x_coproduct_truncated(hopf, &tx, cutoff)?;
                    for y in &samples {
                        let ty = DualElement::basis(y.clone());
                        report.checked += 1;
                        let inner1 = x_bracket(hopf, table, &b, &ty, &c)?;
                        let t1 = x_bracket(hopf, table, &a, &tx, &inner1)?;
                        let inner2 = x_bracket(hopf, table, &a, &tx, &c)?;
                        let t2 = x_bracket(hopf, table, &b, &ty, &inner2)?;
                        let lhs = t1.add(&t2.neg());

                        let mut rhs = ModuleElement::zero(r);
                        for ((ia, ib), c_ab) in &cop.entries {
                            // x_(1) = t_A (index ia), x_(2) = t_B (index ib);
                            // the outer index is y·x_(1) = t_{J+A}
                            let inner = x_bracket(
                                hopf,
                                table,
                                &a,
                                &DualElement::basis(ib.clone()),
                                &b,
                            )?;
                            if inner.is_zero() {
                                continue;
                            }
                            let yx1 = crate::dual::x_mul(&ty, &DualElement::basis(ia.clone()));
                            let outer = x_bracket(hopf, table, &inner, &yx1, &c)?;
                            rhs = rhs.add(&outer.scale(c_ab));
                        }
                        if lhs != rhs {
                            report.failures.push(AxiomFailure {
                                axiom: "jacobi-x".into(),
                                indices: vec![i, j, k],
                                witness: format!("x=t{} y=t{} lhs={} rhs={}", x, y, lhs, rhs),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Action on a tensor product of two modules:
/// a * (m x n) = sum (h_k x 1) @_H (m_k x n) + sum (h'_l x 1) @_H (m x n_l).
pub fn tensor_action<F, G>(
    _hopf: &Hopf,
    act_left: F,
    act_right: G,
    a: &ModuleElement,
    m: &ModuleElement,
    n: &ModuleElement,
) -> Result<PseudoTensor<TensorElement>>
where
    F: Fn(&ModuleElement, &ModuleElement) -> Result<Pt>,
    G: Fn(&ModuleElement, &ModuleElement) -> Result<Pt>,
{
    let mut acc = PseudoTensor::zero(2);
    let am = act_left(a, m)?;
    for (key, mk) in am.terms() {
        acc.accumulate(key.clone(), TensorElement::from_pair(mk, n));
    }
    let an = act_right(a, n)?;
    for (key, nl) in an.terms() {
        acc.accumulate(key.clone(), TensorElement::from_pair(m, nl));
    }
    Ok(acc)
}

/// Linear extension of `tensor_action` to arbitrary two-slot tensors.
pub fn tensor_action_element<F, G>(
    hopf: &Hopf,
    act_left: F,
    act_right: G,
    left_rank: usize,
    right_rank: usize,
    a: &ModuleElement,
    w: &TensorElement,
) -> Result<PseudoTensor<TensorElement>>
where
    F: Fn(&ModuleElement, &ModuleElement) -> Result<Pt>,
    G: Fn(&ModuleElement, &ModuleElement) -> Result<Pt>,
{
    assert_eq!(w.slots, 2);
    let mut acc = PseudoTensor::zero(2);
    for (key, c) in w.terms() {
        let m = ModuleElement::single(
            left_rank,
            key[0].1,
            HopfElement::monomial(key[0].0.clone(), c.clone()),
        );
        let n = ModuleElement::single(
            right_rank,
            key[1].1,
            HopfElement::monomial(key[1].0.clone(), Rat::one()),
        );
        acc = acc.add(&tensor_action(hopf, &act_left, &act_right, a, &m, &n)?);
    }
    Ok(acc)
}

/// Three-slot analogue, for triple tensor modules.
pub fn tensor_action_element3<F>(
    hopf: &Hopf,
    act: F,
    rank: usize,
    a: &ModuleElement,
    w: &TensorElement,
) -> Result<PseudoTensor<TensorElement>>
where
    F: Fn(&ModuleElement, &ModuleElement) -> Result<Pt>,
{
    assert_eq!(w.slots, 3);
    let mut acc = PseudoTensor::zero(2);
    for (key, c) in w.terms() {
        let parts: Vec<ModuleElement> = key
            .iter()
            .map(|(idx, bindex)| {
                ModuleElement::single(
                    rank,
                    *bindex,
                    HopfElement::monomial(idx.clone(), Rat::one()),
                )
            })
            .collect();
        for slot in 0..3 {
            let av = act(a, &parts[slot])?;
            for (pkey, moved) in av.terms() {
                let mut factors: Vec<&ModuleElement> = parts.iter().collect();
                factors[slot] = moved;
                let val = TensorElement::from_triple(factors[0], factors[1], factors[2]);
                acc.accumulate(pkey.clone(), val.scale(c));
            }
        }
    }
    Ok(acc)
}

/// The dual module M* = Chom(M, k) of a free module action, on the dual
/// basis.
#[derive(Debug, Clone)]
pub struct DualModule {
    pub action: ModuleActionTable,
}

/// g-coefficient of the evaluation f(m) = (g x 1) @_H 1 for f in
/// dual-basis coordinates and m in the module: g = sum_j u_j S(v_j).
pub fn dual_pairing_coefficient(
    hopf: &Hopf,
    f: &ModuleElement,
    m: &ModuleElement,
) -> HopfElement {
    let mut g = HopfElement::zero();
    for (u, v) in f.coeffs.iter().zip(&m.coeffs) {
        if u.is_zero() || v.is_zero() {
            continue;
        }
        g = g.add(&hopf.mul(u, &hopf.antipode(v)));
    }
    g
}

/// Builds the action of L on the dual module M* = Chom(M, k). The value
/// on a basis functional is determined by (a·f)(m) = -(sigma x id) f(a·m)
/// (the trivial-module term vanishes), assembled entrywise through the
/// Fourier transform on the first two slots.
pub fn chom_dual(hopf: &Hopf, action: &ModuleActionTable) -> Result<DualModule> {
    let r_actor = action.actor.rank();
    let r_mod = action.target.rank();
    let dual_sig = FreeModuleSignature::new(
        action
            .target
            .labels
            .iter()
            .map(|l| format!("{}*", l))
            .collect(),
    );
    let mut dual = ModuleActionTable::zero(action.actor.clone(), dual_sig);
    for i in 0..r_actor {
        for j in 0..r_mod {
            let mut entry: Pt = PseudoTensor::zero(2);
            for m in 0..r_mod {
                let am = action.get(i, m);
                let mut e_m = TensorPower::zero(2);
                for (key, u_b) in am.terms() {
                    let vj = &u_b.coeffs[j];
                    if vj.is_zero() {
                        continue;
                    }
                    let g = hopf.antipode(vj);
                    let raw = TensorPower::pure(&[
                        HopfElement::monomial(key[0].clone(), Rat::one()),
                        g,
                    ]);
                    e_m = e_m.add(&raw.neg());
                }
                let canonical = crate::pseudo::fourier(
                    hopf,
                    &e_m,
                    crate::pseudo::FourierDirection::Forward,
                );
                for (slots, c) in canonical.terms() {
                    entry.accumulate(
                        vec![slots[0].clone()],
                        ModuleElement::single(
                            r_mod,
                            m,
                            HopfElement::monomial(slots[1].clone(), c.clone()),
                        ),
                    );
                }
            }
            dual.set(i, j, entry);
        }
    }
    Ok(DualModule { action: dual })
}

/// Evaluation of the pseudolinear map attached to f x n on m:
/// (1 x S(g_{f,m})) @_H n, canonicalised.
pub fn chom_apply(hopf: &Hopf, f: &ModuleElement, n: &ModuleElement, m: &ModuleElement) -> Pt {
    let g = dual_pairing_coefficient(hopf, f, m);
    let raw = TensorPower::pure(&[hopf.one(), hopf.antipode(&g)]);
    PseudoTensor::normalize(hopf, 2, &[(raw, n.clone())])
}

#[cfg(test)]
pub(crate) fn solvable_table_for_tests(hopf: &Hopf, p: &HopfElement) -> BracketTable {
    let sig = FreeModuleSignature::new(vec!["a".into(), "b".into()]);
    let mut t = BracketTable::zero(sig);
    let b = ModuleElement::basis(2, hopf.dim(), 1);
    let raw = TensorPower::pure(&[p.clone(), hopf.one()]);
    let ab = PseudoTensor::normalize(hopf, 2, &[(raw, b)]);
    t.set(1, 0, ab.swap12(hopf).neg());
    t.set(0, 1, ab);
    t
}
