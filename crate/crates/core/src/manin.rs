//! Bilinear pseudo-forms, pseudo Manin triples, the correspondence with
//! bialgebra structures, and the Drinfeld double.

use crate::bialg::{
    check_coalgebra, check_cocycle, cobracket_to_pseudobracket, coboundary_delta,
    dualize_to_cobracket, Cobracket, RElement,
};
use crate::error::{Error, Result};
use crate::hopf::{Hopf, HopfElement, MultiIndex, Rat, TensorPower};
use crate::lie::{check_lie_axioms, BracketTable, LieReport, Pt};
use crate::pseudo::{FreeModuleSignature, HMod, ModuleElement, PseudoTensor, TensorElement};
use num::{One, Zero};
use std::fmt;

/// Bilinear pseudo-form on a free module: <a_i, a_j> = (h_ij x 1) @_H 1,
/// only the h part is stored. Evaluation is H-sesquilinear:
/// <f a_i, g a_j> has h part f h_ij S(g).
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoForm {
    pub signature: FreeModuleSignature,
    entries: Vec<Vec<HopfElement>>,
}

impl PseudoForm {
    pub fn zero(signature: FreeModuleSignature) -> Self {
        let r = signature.rank();
        PseudoForm {
            signature,
            entries: vec![vec![HopfElement::zero(); r]; r],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, h: HopfElement) {
        self.entries[i][j] = h;
    }

    pub fn get(&self, i: usize, j: usize) -> &HopfElement {
        &self.entries[i][j]
    }

    /// h part of <u, w>.
    pub fn value(&self, hopf: &Hopf, u: &ModuleElement, w: &ModuleElement) -> HopfElement {
        let mut acc = HopfElement::zero();
        for (i, f) in u.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in w.coeffs.iter().enumerate() {
                if g.is_zero() || self.entries[i][j].is_zero() {
                    continue;
                }
                acc = acc.add(&hopf.mul(&hopf.mul(f, &self.entries[i][j]), &hopf.antipode(g)));
            }
        }
        acc
    }
}

/// Decides invertibility of a matrix over H by elimination with scalar
/// unit pivots; sufficient for the block-identity pairings produced here.
pub fn h_matrix_invertible(hopf: &Hopf, mat: &[Vec<HopfElement>]) -> bool {
    let n = mat.len();
    if n == 0 {
        return true;
    }
    let mut m: Vec<Vec<HopfElement>> = mat.to_vec();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut alive_cols: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        let mut pivot: Option<(usize, usize, Rat)> = None;
        'search: for &r in &alive {
            for &c in &alive_cols {
                let e = &m[r][c];
                if e.is_zero() {
                    continue;
                }
                if e.degree() == 0 {
                    let s = e.coeff(&MultiIndex::zero(hopf.dim()));
                    if !s.is_zero() {
                        pivot = Some((r, c, s));
                        break 'search;
                    }
                }
            }
        }
        let (pr, pc, s) = match pivot {
            Some(p) => p,
            None => return false,
        };
        let inv = Rat::one() / s;
        for &r in alive.clone().iter() {
            if r == pr || m[r][pc].is_zero() {
                continue;
            }
            let factor = m[r][pc].scale(&inv);
            for &c in &alive_cols {
                let delta = hopf.mul(&factor, &m[pr][c]);
                m[r][c] = m[r][c].add(&delta.neg());
            }
        }
        for &c in alive_cols.clone().iter() {
            if c == pc || m[pr][c].is_zero() {
                continue;
            }
            let factor = m[pr][c].scale(&inv);
            for &r in &alive {
                let delta = hopf.mul(&m[r][pc], &factor);
                m[r][c] = m[r][c].add(&delta.neg());
            }
        }
        alive.retain(|&r| r != pr);
        alive_cols.retain(|&c| c != pc);
    }
    true
}

#[derive(Debug, Clone)]
pub struct FormReport {
    pub symmetric: bool,
    pub invariant: bool,
    pub nondegenerate: bool,
}

impl FormReport {
    pub fn passes(&self) -> bool {
        self.symmetric && self.invariant && self.nondegenerate
    }
}

/// Checks symmetry (h_ij = S(h_ji)), invariance <[a*b],c> = <a,[b*c]>
/// composed in H^{x3} @_H k, and nondegeneracy of the pairing matrix.
pub fn form_check(hopf: &Hopf, form: &PseudoForm, table: &BracketTable) -> Result<FormReport> {
    if form.signature.rank() != table.rank() {
        return Err(Error::SignatureMismatch(
            "form and table ranks differ".into(),
        ));
    }
    let r = table.rank();
    let mut symmetric = true;
    for i in 0..r {
        for j in 0..r {
            if form.entries[i][j] != hopf.antipode(&form.entries[j][i]) {
                symmetric = false;
            }
        }
    }

    let mut invariant = true;
    'outer: for i in 0..r {
        let a = table.basis(hopf, i);
        for j in 0..r {
            for k in 0..r {
                let c = table.basis(hopf, k);
                // <[a*b], c>: sum (u g_(1) x g_(2)) with g the value of the
                // form on (module part, c)
                let mut lhs = TensorPower::zero(2);
                for (key, m) in table.get(i, j)?.terms() {
                    let g = form.value(hopf, m, &c);
                    for (parts, cc) in hopf.coproduct(&g, 2).terms() {
                        let prod = hopf.mul(
                            &HopfElement::monomial(key[0].clone(), Rat::one()),
                            &HopfElement::monomial(parts[0].clone(), Rat::one()),
                        );
                        for (pi, pcoeff) in prod.terms() {
                            lhs.add_term(
                                vec![pi.clone(), parts[1].clone()],
                                cc.clone() * pcoeff.clone(),
                            );
                        }
                    }
                }
                // <a, [b*c]>: sum (p x v) with p the value on (a, module)
                let mut rhs = TensorPower::zero(2);
                for (key, m) in table.get(j, k)?.terms() {
                    let p = form.value(hopf, &a, m);
                    for (pi, pc) in p.terms() {
                        rhs.add_term(vec![pi.clone(), key[0].clone()], pc.clone());
                    }
                }
                if lhs != rhs {
                    invariant = false;
                    break 'outer;
                }
            }
        }
    }

    let nondegenerate = h_matrix_invertible(hopf, &form.entries);
    Ok(FormReport {
        symmetric,
        invariant,
        nondegenerate,
    })
}

/// A Manin triple: a bracket on L + L* with the canonical pairing form;
/// the first `half` generators span L, the rest span L*.
#[derive(Debug, Clone)]
pub struct ManinTriple {
    pub table: BracketTable,
    pub half: usize,
    pub form: PseudoForm,
}

#[derive(Debug, Clone)]
pub struct ManinReport {
    pub closure: bool,
    pub isotropy: bool,
    pub form: FormReport,
    pub lie: LieReport,
}

impl ManinReport {
    pub fn passes(&self) -> bool {
        self.closure && self.isotropy && self.form.passes() && self.lie.passes()
    }
}

pub fn check_manin(hopf: &Hopf, triple: &ManinTriple) -> Result<ManinReport> {
    let r = triple.half;
    let total = triple.table.rank();
    let mut closure = true;
    for i in 0..total {
        for j in 0..total {
            if (i < r) != (j < r) {
                continue;
            }
            let lower = i < r;
            for (_, m) in triple.table.get(i, j)?.terms() {
                for (k, c) in m.coeffs.iter().enumerate() {
                    let in_half = if lower { k < r } else { k >= r };
                    if !c.is_zero() && !in_half {
                        closure = false;
                    }
                }
            }
        }
    }
    let mut isotropy = true;
    for i in 0..total {
        for j in 0..total {
            if (i < r) == (j < r) && !triple.form.get(i, j).is_zero() {
                isotropy = false;
            }
        }
    }
    let form = form_check(hopf, &triple.form, &triple.table)?;
    let lie = check_lie_axioms(hopf, &triple.table)?;
    Ok(ManinReport {
        closure,
        isotropy,
        form,
        lie,
    })
}

/// Raw basis presentation of a canonical bracket value: terms
/// (h, l, target, coefficient) meaning c (D^(h) x D^(l)) @_H a_k.
pub fn raw_basis_terms(hopf: &Hopf, p: &Pt) -> Vec<(MultiIndex, MultiIndex, usize, Rat)> {
    let mut out = Vec::new();
    for (key, m) in p.terms() {
        for (k, w) in m.coeffs.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (parts, c) in hopf.coproduct(w, 2).terms() {
                let prod = hopf.mul(
                    &HopfElement::monomial(key[0].clone(), Rat::one()),
                    &HopfElement::monomial(parts[0].clone(), Rat::one()),
                );
                for (pi, pc) in prod.terms() {
                    out.push((pi.clone(), parts[1].clone(), k, c.clone() * pc.clone()));
                }
            }
        }
    }
    out
}

fn embed_module(m: &ModuleElement, total: usize, offset: usize) -> ModuleElement {
    let mut out = ModuleElement::zero(total);
    for (i, c) in m.coeffs.iter().enumerate() {
        out.coeffs[offset + i] = c.clone();
    }
    out
}

fn embed_pt(p: &Pt, total: usize, offset: usize) -> Pt {
    let mut out = PseudoTensor::zero(2);
    for (key, m) in p.terms() {
        out.accumulate(key.clone(), embed_module(m, total, offset));
    }
    out
}

/// Builds the Manin triple of a bialgebra: the bracket on L + L* combines
/// the given table, the dual of the cobracket, and the mixed bracket
/// forced by invariance of the canonical pairing:
/// [e_i^* * e_j] = sum_s (S(l_(2)) x h S(l_(1))) @_H e_s^*
///              - sum_t (f S(g_(1)) x S(g_(2))) @_H e_t.
pub fn manin_from_bialgebra(
    hopf: &Hopf,
    table: &BracketTable,
    c: &Cobracket,
) -> Result<ManinTriple> {
    let pre = check_cocycle(hopf, table, c)?;
    if !pre.passes() {
        return Err(Error::Precondition(
            "cocycle condition fails; not a bialgebra".into(),
        ));
    }
    let coalg = check_coalgebra(hopf, c);
    if !coalg.passes() {
        return Err(Error::Precondition(
            "cobracket fails coalgebra axioms".into(),
        ));
    }
    let r = table.rank();
    let total = 2 * r;
    let cutoff = 2 * c.max_coefficient_degree() + 1;
    let dual_table = cobracket_to_pseudobracket(hopf, c, cutoff)?;

    let mut labels = table.signature.labels.clone();
    labels.extend(table.signature.labels.iter().map(|l| format!("{}*", l)));
    let mut big = BracketTable::zero(FreeModuleSignature::new(labels));

    for i in 0..r {
        for j in 0..r {
            big.set(i, j, embed_pt(table.get(i, j)?, total, 0));
            big.set(r + i, r + j, embed_pt(dual_table.get(i, j)?, total, r));
        }
    }

    for i in 0..r {
        for j in 0..r {
            let mut raw: Vec<(TensorPower, ModuleElement)> = Vec::new();
            // first sum: raw terms of [e_j * e_s] with target i
            for s in 0..r {
                for (hh, ll, k, cc) in raw_basis_terms(hopf, table.get(j, s)?) {
                    if k != i {
                        continue;
                    }
                    let l_el = HopfElement::monomial(ll, Rat::one());
                    for (parts, pc) in hopf.coproduct(&l_el, 2).terms() {
                        let s1 =
                            hopf.antipode(&HopfElement::monomial(parts[0].clone(), Rat::one()));
                        let s2 =
                            hopf.antipode(&HopfElement::monomial(parts[1].clone(), Rat::one()));
                        let slot2 =
                            hopf.mul(&HopfElement::monomial(hh.clone(), Rat::one()), &s1);
                        raw.push((
                            TensorPower::pure(&[s2, slot2]).scale(&(cc.clone() * pc.clone())),
                            ModuleElement::basis(total, hopf.dim(), r + s),
                        ));
                    }
                }
            }
            // second sum: raw terms of [e_i^* * e_t^*] with target j
            for t in 0..r {
                for (ff, gg, k, cc) in raw_basis_terms(hopf, dual_table.get(i, t)?) {
                    if k != j {
                        continue;
                    }
                    let g_el = HopfElement::monomial(gg, Rat::one());
                    for (parts, pc) in hopf.coproduct(&g_el, 2).terms() {
                        let s1 =
                            hopf.antipode(&HopfElement::monomial(parts[0].clone(), Rat::one()));
                        let s2 =
                            hopf.antipode(&HopfElement::monomial(parts[1].clone(), Rat::one()));
                        let slot1 =
                            hopf.mul(&HopfElement::monomial(ff.clone(), Rat::one()), &s1);
                        raw.push((
                            TensorPower::pure(&[slot1, s2]).scale(&(-cc.clone() * pc.clone())),
                            ModuleElement::basis(total, hopf.dim(), t),
                        ));
                    }
                }
            }
            let mixed = PseudoTensor::normalize(hopf, 2, &raw);
            big.set(j, r + i, mixed.swap12(hopf).neg());
            big.set(r + i, j, mixed);
        }
    }

    let mut form = PseudoForm::zero(big.signature.clone());
    for i in 0..r {
        form.set(r + i, i, hopf.one());
        form.set(i, r + i, hopf.one());
    }
    Ok(ManinTriple {
        table: big,
        half: r,
        form,
    })
}

/// Extracts the bialgebra of a Manin triple: the bracket on the first
/// half together with the cobracket dual to the second half's bracket.
pub fn bialgebra_from_manin(
    hopf: &Hopf,
    triple: &ManinTriple,
) -> Result<(BracketTable, Cobracket)> {
    let report = check_manin(hopf, triple)?;
    if !report.passes() {
        return Err(Error::Precondition(format!("not a Manin triple: {}", report)));
    }
    let r = triple.half;
    let mut table = BracketTable::zero(FreeModuleSignature::new(
        triple.table.signature.labels[..r].to_vec(),
    ));
    for i in 0..r {
        for j in 0..r {
            let mut small = PseudoTensor::zero(2);
            for (key, m) in triple.table.get(i, j)?.terms() {
                let mut trimmed = ModuleElement::zero(r);
                trimmed.coeffs[..r].clone_from_slice(&m.coeffs[..r]);
                small.accumulate(key.clone(), trimmed);
            }
            table.set(i, j, small);
        }
    }
    // cobracket on the first half, dual to the star-block bracket
    let mut cob = Cobracket::zero(table.signature.clone());
    for i in 0..r {
        for j in 0..r {
            for (ff, gg, k, cc) in raw_basis_terms(hopf, triple.table.get(r + i, r + j)?) {
                if k < r {
                    continue;
                }
                let sf = hopf.antipode(&HopfElement::monomial(ff, Rat::one()));
                let sg = hopf.antipode(&HopfElement::monomial(gg, Rat::one()));
                for (fi, fc) in sf.terms() {
                    for (gi, gc) in sg.terms() {
                        cob.entries[k - r].add_term(
                            vec![(fi.clone(), i), (gi.clone(), j)],
                            cc.clone() * fc.clone() * gc.clone(),
                        );
                    }
                }
            }
        }
    }
    Ok((table, cob))
}

/// The Drinfeld double of a bialgebra: the Manin-triple bracket with the
/// coboundary cobracket of the canonical element r = sum e_i x e_i^*.
#[derive(Debug, Clone)]
pub struct Double {
    pub triple: ManinTriple,
    pub cobracket: Cobracket,
    pub r: RElement,
}

pub fn double(hopf: &Hopf, table: &BracketTable, c: &Cobracket) -> Result<Double> {
    let triple = manin_from_bialgebra(hopf, table, c)?;
    let r = table.rank();
    let mut canonical = TensorElement::zero(2);
    for i in 0..r {
        canonical.add_term(
            vec![
                (MultiIndex::zero(hopf.dim()), i),
                (MultiIndex::zero(hopf.dim()), r + i),
            ],
            Rat::one(),
        );
    }
    let cobracket = coboundary_delta(hopf, &triple.table, &canonical)?;
    Ok(Double {
        triple,
        cobracket,
        r: canonical,
    })
}

/// The two restriction identities of the double's cobracket: on the first
/// half it equals the bialgebra cobracket, on the second half it is minus
/// the dual cobracket.
pub fn double_restriction_identities(
    hopf: &Hopf,
    dbl: &Double,
    table: &BracketTable,
    c: &Cobracket,
) -> Result<(bool, bool)> {
    let r = dbl.triple.half;
    let mut l_ok = true;
    for i in 0..r {
        if dbl.cobracket.entries[i] != c.entries[i] {
            l_ok = false;
        }
    }
    let dual = dualize_to_cobracket(hopf, table)?;
    let mut star_ok = true;
    for i in 0..r {
        let mut expected = TensorElement::zero(2);
        for (key, cc) in dual.entries[i].terms() {
            expected.add_term(
                vec![
                    (key[0].0.clone(), key[0].1 + r),
                    (key[1].0.clone(), key[1].1 + r),
                ],
                -cc.clone(),
            );
        }
        if dbl.cobracket.entries[r + i] != expected {
            star_ok = false;
        }
    }
    Ok((l_ok, star_ok))
}

impl fmt::Display for ManinReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "closure={} isotropy={} symmetric={} invariant={} nondegenerate={} lie={}",
            self.closure,
            self.isotropy,
            self.form.symmetric,
            self.form.invariant,
            self.form.nondegenerate,
            self.lie
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialg::cybe_check;
    use crate::lie::solvable_table_for_tests as solvable_table;

    fn delta_h(hopf: &Hopf, h: &HopfElement) -> Cobracket {
        let sig = FreeModuleSignature::new(vec!["a".into(), "b".into()]);
        let mut c = Cobracket::zero(sig);
        let sh = hopf.antipode(h);
        for (idx, cc) in sh.terms() {
            c.entries[1].add_term(
                vec![(idx.clone(), 0), (MultiIndex::zero(hopf.dim()), 1)],
                cc.clone(),
            );
            c.entries[1].add_term(
                vec![(MultiIndex::zero(hopf.dim()), 1), (idx.clone(), 0)],
                -cc.clone(),
            );
        }
        c
    }

    #[test]
    fn form_check_examples() {
        let h = Hopf::polynomial(1);
        let t = solvable_table(&h, &h.one());
        let z = PseudoForm::zero(t.signature.clone());
        let rep = form_check(&h, &z, &t).unwrap();
        assert!(rep.symmetric && rep.invariant && !rep.nondegenerate);

        let zt = BracketTable::zero(FreeModuleSignature::of_rank(1));
        let mut f = PseudoForm::zero(zt.signature.clone());
        f.set(0, 0, h.gen(0));
        let rep = form_check(&h, &f, &zt).unwrap();
        assert!(!rep.symmetric);
    }

    #[test]
    fn matrix_invertibility() {
        let h = Hopf::polynomial(1);
        let id = vec![
            vec![h.one(), HopfElement::zero()],
            vec![HopfElement::zero(), h.one()],
        ];
        assert!(h_matrix_invertible(&h, &id));
        let anti = vec![
            vec![HopfElement::zero(), h.one()],
            vec![h.one(), HopfElement::zero()],
        ];
        assert!(h_matrix_invertible(&h, &anti));
        let deg = vec![
            vec![h.gen(0), HopfElement::zero()],
            vec![HopfElement::zero(), h.one()],
        ];
        assert!(!h_matrix_invertible(&h, &deg));
    }

    #[test]
    fn manin_of_zero_bialgebra_is_abelian() {
        let h = Hopf::polynomial(1);
        let t = BracketTable::zero(FreeModuleSignature::of_rank(2));
        let c = Cobracket::zero(t.signature.clone());
        let triple = manin_from_bialgebra(&h, &t, &c).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(triple.table.get(i, j).unwrap().is_zero());
            }
        }
        let rep = check_manin(&h, &triple).unwrap();
        assert!(rep.passes(), "{}", rep);
    }

    #[test]
    fn manin_of_solvable_bialgebra() {
        let h = Hopf::polynomial(1);
        let t = solvable_table(&h, &h.one());
        let c = delta_h(&h, &h.gen(0));
        let triple = manin_from_bialgebra(&h, &t, &c).unwrap();
        let rep = check_manin(&h, &triple).unwrap();
        assert!(rep.passes(), "{}", rep);
    }

    #[test]
    fn mixed_bracket_reduces_for_abelian_table() {
        // zero bracket, nonzero cobracket: only the second sum of the
        // mixed bracket survives, landing in the L half
        let h = Hopf::polynomial(1);
        let t = BracketTable::zero(FreeModuleSignature::new(vec!["a".into(), "b".into()]));
        let mut c = Cobracket::zero(t.signature.clone());
        c.entries[1].add_term(
            vec![(MultiIndex(vec![0]), 0), (MultiIndex(vec![0]), 1)],
            Rat::one(),
        );
        c.entries[1].add_term(
            vec![(MultiIndex(vec![0]), 1), (MultiIndex(vec![0]), 0)],
            -Rat::one(),
        );
        let triple = manin_from_bialgebra(&h, &t, &c).unwrap();
        let mut saw_nonzero = false;
        for i in 0..2 {
            for j in 0..2 {
                let mixed = triple.table.get(2 + i, j).unwrap();
                if !mixed.is_zero() {
                    saw_nonzero = true;
                }
                for (_, m) in mixed.terms() {
                    for k in 2..4 {
                        assert!(m.coeffs[k].is_zero());
                    }
                }
            }
        }
        assert!(saw_nonzero);
        assert!(check_manin(&h, &triple).unwrap().passes());
    }

    #[test]
    fn round_trip_bialgebra_manin() {
        let h = Hopf::polynomial(1);
        for hh in [h.gen(0), h.divided_power(0, 3)] {
            let t = solvable_table(&h, &h.one());
            let c = delta_h(&h, &hh);
            let triple = manin_from_bialgebra(&h, &t, &c).unwrap();
            let (t2, c2) = bialgebra_from_manin(&h, &triple).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(t.get(i, j).unwrap(), t2.get(i, j).unwrap());
                }
            }
            assert_eq!(c.entries, c2.entries);
        }
    }

    #[test]
    fn isotropy_violation_rejected() {
        let h = Hopf::polynomial(1);
        let t = BracketTable::zero(FreeModuleSignature::of_rank(2));
        let c = Cobracket::zero(t.signature.clone());
        let mut triple = manin_from_bialgebra(&h, &t, &c).unwrap();
        triple.form.set(0, 0, h.one());
        assert!(matches!(
            bialgebra_from_manin(&h, &triple),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn double_of_zero_bialgebra() {
        let h = Hopf::polynomial(1);
        let t = BracketTable::zero(FreeModuleSignature::of_rank(2));
        let c = Cobracket::zero(t.signature.clone());
        let dbl = double(&h, &t, &c).unwrap();
        assert!(dbl.cobracket.is_zero());
        let rep = cybe_check(&h, &dbl.triple.table, &dbl.r).unwrap();
        assert!(rep.invariance && rep.quasitriangular);
        let (l_ok, star_ok) = double_restriction_identities(&h, &dbl, &t, &c).unwrap();
        assert!(l_ok && star_ok);
    }

    #[test]
    fn double_of_solvable_bialgebra() {
        let h = Hopf::polynomial(1);
        let t = solvable_table(&h, &h.one());
        let c = delta_h(&h, &h.gen(0));
        let dbl = double(&h, &t, &c).unwrap();
        let lie = check_lie_axioms(&h, &dbl.triple.table).unwrap();
        assert!(lie.passes(), "{}", lie);
        let (l_ok, star_ok) = double_restriction_identities(&h, &dbl, &t, &c).unwrap();
        assert!(l_ok, "double cobracket does not restrict to the cobracket");
        assert!(star_ok, "star restriction is not minus the dual cobracket");
        let rep = cybe_check(&h, &dbl.triple.table, &dbl.r).unwrap();
        assert!(rep.invariance);
        assert!(rep.quasitriangular);
        assert!(rep.cybe_mod);
        assert!(rep.biconditional_consistent);
    }
}
