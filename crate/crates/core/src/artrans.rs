//! Auslander–Reiten translations in the morphism category and its mono and epi
//! subcategories, and almost split sequences.

use crate::error::{Error, Result};
use crate::exactlin::{Mat, Splitting};
use crate::morcat::{cok, epi, epi_map, ker, ker_map, mepi, mimo, mono, tau_branchwise, tau_inv_branchwise};
use crate::repmod::{
    self, cokernel, direct_sum, factor_through, hom, induce, is_projective, kernel, lift_projective, projective_cover,
    restrict, ModMap, Rep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauMethod {
    /// Mimo of the branchwise translate of Cok.
    MimoTauCok,
    /// Ker of the morphism-category translate of Cok.
    KerTaumCok,
}

impl std::str::FromStr for TauMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mimo-tau-cok" => Ok(TauMethod::MimoTauCok),
            "ker-taum-cok" => Ok(TauMethod::KerTaumCok),
            _ => Err(Error::Input(format!("unknown method {s}; use mimo-tau-cok or ker-taum-cok"))),
        }
    }
}

/// Translate in the full morphism category.
pub fn tau_m(x: &Rep) -> Rep {
    repmod::tau(x)
}

pub fn tau_m_inv(x: &Rep) -> Rep {
    repmod::tau_inv(x)
}

/// Translate in the monomorphism category.
pub fn tau_s(x: &Rep, method: TauMethod, seed: u64) -> Rep {
    match method {
        TauMethod::MimoTauCok => mimo(&tau_branchwise(&cok(x).chain), seed),
        TauMethod::KerTaumCok => ker(&tau_m(&cok(x).chain)).chain,
    }
}

/// Inverse translate in the monomorphism category.
pub fn tau_s_inv(x: &Rep, method: TauMethod) -> Rep {
    match method {
        TauMethod::MimoTauCok => ker(&mepi(&tau_inv_branchwise(x))).chain,
        TauMethod::KerTaumCok => mono(&tau_m_inv(x)).chain,
    }
}

/// Translate in the epimorphism category.
pub fn tau_f(x: &Rep, method: TauMethod, seed: u64) -> Rep {
    match method {
        TauMethod::MimoTauCok => cok(&mimo(&tau_branchwise(x), seed)).chain,
        TauMethod::KerTaumCok => epi(&tau_m(x)).chain,
    }
}

pub fn tau_f_inv(x: &Rep, method: TauMethod) -> Rep {
    match method {
        TauMethod::MimoTauCok => mepi(&tau_inv_branchwise(&ker(x).chain)),
        TauMethod::KerTaumCok => cok(&tau_m_inv(&ker(x).chain)).chain,
    }
}

/// `left --f--> middle --g--> right`, almost split.
#[derive(Clone, Debug)]
pub struct ArSequence {
    pub left: Rep,
    pub middle: Rep,
    pub right: Rep,
    pub f: ModMap,
    pub g: ModMap,
}

/// Radical of a local endomorphism algebra, as maps.
pub fn local_radical(z: &Rep, seed: u64) -> Result<Vec<ModMap>> {
    let end = hom(z, z);
    let p = z.p();
    let id = ModMap::identity(z);
    let mut rad = Vec::new();
    for b in &end.basis {
        let mut lam = None;
        for blk in &b.blocks {
            if blk.rows == 0 {
                continue;
            }
            let roots = crate::exactlin::linear_roots(&blk.charpoly()?, p, seed)?;
            match (roots.as_slice(), lam) {
                ([r], None) => lam = Some(*r),
                ([r], Some(l)) if *r == l => {}
                _ => return Err(Error::Domain("endomorphism algebra is not local".into())),
            }
        }
        let r = b.sub(&id.scale(lam.unwrap_or(0)));
        if !r.blocks.iter().all(Mat::is_nilpotent) {
            return Err(Error::Domain("endomorphism algebra is not local".into()));
        }
        rad.push(r);
    }
    let flat: Vec<Vec<u32>> = rad.iter().map(|r| end.coords(r)).collect();
    let m = Mat::from_fn(p, end.dim(), flat.len(), |i, j| flat[j][i]);
    Ok(m.rref().pivots.iter().map(|&j| rad[j].clone()).collect())
}

/// The almost split sequence ending at an indecomposable non-projective `z`,
/// computed in the frame `z` lives in.
pub fn ar_sequence(z: &Rep, seed: u64) -> Result<ArSequence> {
    if z.is_zero() || is_projective(z) {
        return Err(Error::Domain("no almost split sequence ends at a projective or zero object".into()));
    }
    let p = z.p();
    let w = repmod::tau(z);
    let (p0, e) = projective_cover(z);
    let (om, iota) = kernel(&e);
    let h = hom(&om, &w);
    let bcols: Vec<Vec<u32>> = hom(&p0, &w).basis.iter().map(|b| h.coords(&b.after(&iota))).collect();
    let bmat = Mat::from_fn(p, h.dim(), bcols.len(), |i, j| bcols[j][i]).col_basis();
    let split = Splitting::new(&bmat, h.dim());
    let (qm, sec) = (split.quotient_map(), split.section());
    let ext_dim = qm.rows;
    if ext_dim == 0 {
        return Err(Error::Domain("Ext^1(Z, τZ) vanishes".into()));
    }
    let mut actions = Vec::new();
    for r in local_radical(z, seed)? {
        let rp = lift_projective(&r.after(&e), &e);
        let ro = restrict(&rp, &iota, &iota);
        let mut a = Mat::zeros(p, ext_dim, ext_dim);
        for j in 0..ext_dim {
            let cls = h.combine(&sec.col(j));
            let img = qm.mul_vec(&h.coords(&cls.after(&ro)));
            for (i, v) in img.into_iter().enumerate() {
                a.set(i, j, v);
            }
        }
        actions.push(a);
    }
    let refs: Vec<&Mat> = actions.iter().collect();
    let soc = Mat::vstack(p, ext_dim, &refs).kernel_basis();
    if soc.cols != 1 {
        return Err(Error::ArAmbiguous(format!("socle of Ext has dimension {}", soc.cols)));
    }
    let cls = h.combine(&sec.mul_vec(&soc.col(0)));
    let frame = z.frame.clone();
    let ds = direct_sum(&frame, &[w.clone(), p0.clone()]);
    let u = ds.vcat(&[cls, iota.neg()], &om);
    let (mid, q) = cokernel(&u);
    let f = q.after(&ds.incl[0]);
    let to_z = ds.hcat(&[ModMap::zero(&w, z), e.clone()], z);
    let g = induce(&to_z, &q, &ModMap::identity(z));
    if factor_through(&ModMap::identity(z), &g).is_some() {
        return Err(Error::Domain("constructed sequence splits".into()));
    }
    Ok(ArSequence { left: w, middle: mid.clone(), right: z.clone(), f, g })
}

/// Almost split sequence in the monomorphism category ending at `z`, as Ker of
/// the morphism-category sequence ending at Cok z.
pub fn ar_sequence_s(z: &Rep, seed: u64) -> Result<ArSequence> {
    let seq = ar_sequence(&cok(z).chain, seed)?;
    let (kl, km, kr) = (ker(&seq.left), ker(&seq.middle), ker(&seq.right));
    let f = ker_map(&seq.f, &kl, &km);
    let g = ker_map(&seq.g, &km, &kr);
    Ok(ArSequence { left: kl.chain, middle: km.chain, right: kr.chain, f, g })
}

/// Almost split sequence in the epimorphism category ending at `z`, as Epi of
/// the morphism-category sequence.
pub fn ar_sequence_f(z: &Rep, seed: u64) -> Result<ArSequence> {
    let seq = ar_sequence(z, seed)?;
    let (el, em, er) = (epi(&seq.left), epi(&seq.middle), epi(&seq.right));
    let f = epi_map(&seq.f, &el, &em);
    let g = epi_map(&seq.g, &em, &er);
    Ok(ArSequence { left: el.chain, middle: em.chain, right: er.chain, f, g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::exactlin::FieldSpec;
    use crate::morcat::{assemble_checked, in_mono};
    use crate::repmod::{decompose, is_iso};

    #[test]
    fn module_sequence_over_dual_numbers() {
        // 0 -> S -> A -> S -> 0
        let a = Algebra::nakayama(1, 2, FieldSpec::default()).unwrap();
        let s = a.uniserial(0, 1).unwrap();
        let seq = ar_sequence(&s, 0).unwrap();
        assert!(is_iso(&seq.left, &s, 0));
        assert!(is_iso(&seq.middle, &a.uniserial(0, 2).unwrap(), 0));
        assert!(seq.f.is_mono() && seq.g.is_epi() && seq.g.after(&seq.f).is_zero());
    }

    #[test]
    fn sequence_over_longer_nakayama() {
        // 0 -> U(v+1, l) -> U(v, l+1) ⊕ U(v+1, l-1) -> U(v, l) -> 0
        let a = Algebra::nakayama(2, 3, FieldSpec::default()).unwrap();
        let u = a.uniserial(0, 2).unwrap();
        let seq = ar_sequence(&u, 0).unwrap();
        let parts = decompose(&seq.middle, 0).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(|s| s.rep.total_dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 3]);
        assert!(is_iso(&seq.left, &a.uniserial(1, 2).unwrap(), 0));
    }

    #[test]
    fn both_tau_methods_agree_on_a_small_chain() {
        let a = Algebra::nakayama(1, 2, FieldSpec::default()).unwrap();
        let s = a.uniserial(0, 1).unwrap();
        let aa = a.uniserial(0, 2).unwrap();
        let i = ModMap::new(&s, &aa, vec![Mat::from_rows(a.p(), &[vec![0], vec![1]])]).unwrap();
        let x = assemble_checked(&a, &[aa.clone(), s.clone()], &[i]).unwrap();
        let t1 = tau_s(&x, TauMethod::MimoTauCok, 0);
        let t2 = tau_s(&x, TauMethod::KerTaumCok, 0);
        assert!(in_mono(&t1) && in_mono(&t2));
        assert!(is_iso(&t1, &t2, 0));
        assert!(is_iso(&tau_s_inv(&t1, TauMethod::MimoTauCok), &x, 0));
    }
}
