//! Chains `X_n -> ... -> X_1` of modules, stored as representations of the chain
//! frame, and the functors relating the full morphism category with its
//! monomorphism and epimorphism subcategories.
//!
//! Branches are numbered from 0 here: branch `i` holds `X_{i+1}` and
//! `phi(x, i)` is the structure map from branch `i + 1` to branch `i`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::Mat;
use crate::repmod::{
    cokernel, direct_sum, extend_along, image, induce, injective_envelope, kernel, lift_projective, projective_cover,
    restrict, restrict_target, DirectSum, Frame, ModMap, Rep,
};

fn base_of(x: &Rep) -> (Arc<Frame>, usize) {
    let n = x.frame.chain_len().expect("chain frame");
    (x.frame.base().expect("chain frame").clone(), n)
}

pub fn chain_len(x: &Rep) -> usize {
    x.frame.chain_len().expect("chain frame")
}

/// Branch `i` as a module.
pub fn branch(x: &Rep, i: usize) -> Rep {
    let (base, _) = base_of(x);
    let nv = base.nverts();
    let na = base.narrows();
    let dims = x.dims[i * nv..(i + 1) * nv].to_vec();
    let mats = x.mats[i * na..(i + 1) * na].to_vec();
    Rep::from_parts(&base, dims, mats)
}

pub fn branches(x: &Rep) -> Vec<Rep> {
    (0..chain_len(x)).map(|i| branch(x, i)).collect()
}

fn phi_arrow(n: usize, na: usize, nv: usize, i: usize, v: usize) -> usize {
    n * na + i * nv + v
}

/// Structure map from branch `i + 1` to branch `i`.
pub fn phi(x: &Rep, i: usize) -> ModMap {
    let (base, n) = base_of(x);
    let (nv, na) = (base.nverts(), base.narrows());
    let blocks = (0..nv).map(|v| x.mats[phi_arrow(n, na, nv, i, v)].clone()).collect();
    ModMap::from_parts(&branch(x, i + 1), &branch(x, i), blocks)
}

pub fn phis(x: &Rep) -> Vec<ModMap> {
    (0..chain_len(x) - 1).map(|i| phi(x, i)).collect()
}

/// Assemble a chain from branches and maps `maps[i]: branches[i+1] -> branches[i]`.
pub fn assemble(cf: &Arc<Frame>, branches: &[Rep], maps: &[ModMap]) -> Rep {
    let n = cf.chain_len().expect("chain frame");
    assert_eq!(branches.len(), n);
    assert_eq!(maps.len(), n - 1);
    let base = cf.base().unwrap();
    let (nv, na) = (base.nverts(), base.narrows());
    let dims: Vec<usize> = branches.iter().flat_map(|b| b.dims.iter().copied()).collect();
    let mut mats: Vec<Mat> = branches.iter().flat_map(|b| b.mats.iter().cloned()).collect();
    for f in maps {
        mats.extend(f.blocks.iter().cloned());
    }
    debug_assert_eq!(mats.len(), n * na + (n - 1) * nv);
    Rep::from_parts(cf, dims, mats)
}

/// Assemble and validate a chain built from user-supplied data.
pub fn assemble_checked(alg: &Algebra, branches: &[Rep], maps: &[ModMap]) -> Result<Rep> {
    let n = branches.len();
    if n == 0 || maps.len() + 1 != n {
        return Err(Error::Input(format!("{} branches need {} maps, got {}", n, n.saturating_sub(1), maps.len())));
    }
    for (i, f) in maps.iter().enumerate() {
        if !f.is_hom() {
            return Err(Error::Domain(format!("structure map {} is not a module homomorphism", i + 1)));
        }
    }
    let x = assemble(&alg.chain_frame(n), branches, maps);
    Rep::new(&x.frame, x.dims.clone(), x.mats.clone())
}

/// Chain map with the given components `comps[i]: branch_i(x) -> branch_i(y)`.
pub fn chain_map(x: &Rep, y: &Rep, comps: &[ModMap]) -> ModMap {
    let blocks = comps.iter().flat_map(|c| c.blocks.iter().cloned()).collect();
    ModMap::from_parts(x, y, blocks)
}

pub fn component(f: &ModMap, i: usize) -> ModMap {
    let (base, _) = base_of(&f.src);
    let nv = base.nverts();
    ModMap::from_parts(&branch(&f.src, i), &branch(&f.tgt, i), f.blocks[i * nv..(i + 1) * nv].to_vec())
}

/// `phi(lo) ∘ ... ∘ phi(hi - 1)`: branch `hi` to branch `lo`.
pub fn composite(x: &Rep, lo: usize, hi: usize) -> ModMap {
    let mut acc = ModMap::identity(&branch(x, hi));
    for i in (lo..hi).rev() {
        acc = phi(x, i).after(&acc);
    }
    acc
}

pub fn in_mono(x: &Rep) -> bool {
    phis(x).iter().all(ModMap::is_mono)
}

pub fn in_epi(x: &Rep) -> bool {
    phis(x).iter().all(ModMap::is_epi)
}

/// `m_i(M)`: `M` in branches `0..i` joined by identities.
pub fn m_embed(alg: &Algebra, n: usize, i: usize, m: &Rep) -> Rep {
    let z = Rep::zero(&m.frame);
    let bs: Vec<Rep> = (0..n).map(|k| if k < i { m.clone() } else { z.clone() }).collect();
    let maps = (0..n - 1)
        .map(|k| if k + 1 < i { ModMap::identity(m) } else { ModMap::zero(&bs[k + 1], &bs[k]) })
        .collect::<Vec<_>>();
    assemble(&alg.chain_frame(n), &bs, &maps)
}

/// `p_i(M)`: `M` in the last `i` branches joined by identities.
pub fn p_embed(alg: &Algebra, n: usize, i: usize, m: &Rep) -> Rep {
    let z = Rep::zero(&m.frame);
    let bs: Vec<Rep> = (0..n).map(|k| if k >= n - i { m.clone() } else { z.clone() }).collect();
    let maps = (0..n - 1)
        .map(|k| if k >= n - i { ModMap::identity(m) } else { ModMap::zero(&bs[k + 1], &bs[k]) })
        .collect::<Vec<_>>();
    assemble(&alg.chain_frame(n), &bs, &maps)
}

// ---------------------------------------------------------------------------
// Ker, Cok, Mono, Epi

/// Data of a functor applied to an object: the new chain and, per branch, the
/// map relating it to an old branch (an inclusion or a projection).
pub struct FunctorImage {
    pub chain: Rep,
    pub legs: Vec<ModMap>,
}

/// `Ker`: branch 0 is the last module; branch `k` is the kernel of the composite into branch `k - 1`.
pub fn ker(x: &Rep) -> FunctorImage {
    let n = chain_len(x);
    let top = branch(x, n - 1);
    let mut legs = vec![ModMap::identity(&top)];
    for k in 1..n {
        legs.push(kernel(&composite(x, k - 1, n - 1)).1);
    }
    let bs: Vec<Rep> = legs.iter().map(|l| l.src.clone()).collect();
    let maps: Vec<ModMap> = (0..n - 1).map(|k| restrict_target(&legs[k + 1], &legs[k])).collect();
    FunctorImage { chain: assemble(&x.frame, &bs, &maps), legs }
}

pub fn ker_map(f: &ModMap, src: &FunctorImage, tgt: &FunctorImage) -> ModMap {
    let n = chain_len(&f.src);
    let top = component(f, n - 1);
    let comps: Vec<ModMap> = (0..n).map(|k| restrict(&top, &src.legs[k], &tgt.legs[k])).collect();
    chain_map(&src.chain, &tgt.chain, &comps)
}

/// `Cok`: branch `k < n-1` is the cokernel of the composite from branch `k + 1` into branch 0; the last is branch 0.
pub fn cok(x: &Rep) -> FunctorImage {
    let n = chain_len(x);
    let bottom = branch(x, 0);
    let mut legs: Vec<ModMap> = (0..n - 1).map(|k| cokernel(&composite(x, 0, k + 1)).1).collect();
    legs.push(ModMap::identity(&bottom));
    let bs: Vec<Rep> = legs.iter().map(|l| l.tgt.clone()).collect();
    let id = ModMap::identity(&bottom);
    let maps: Vec<ModMap> = (0..n - 1).map(|k| induce(&id, &legs[k + 1], &legs[k])).collect();
    FunctorImage { chain: assemble(&x.frame, &bs, &maps), legs }
}

pub fn cok_map(f: &ModMap, src: &FunctorImage, tgt: &FunctorImage) -> ModMap {
    let n = chain_len(&f.src);
    let f0 = component(f, 0);
    let comps: Vec<ModMap> = (0..n).map(|k| induce(&f0, &src.legs[k], &tgt.legs[k])).collect();
    chain_map(&src.chain, &tgt.chain, &comps)
}

/// `Mono`: branch `k` is the image of the composite from branch `k` into branch 0.
pub fn mono(x: &Rep) -> FunctorImage {
    let n = chain_len(x);
    let legs: Vec<ModMap> = (0..n).map(|k| image(&composite(x, 0, k)).2).collect();
    let bs: Vec<Rep> = legs.iter().map(|l| l.src.clone()).collect();
    let maps: Vec<ModMap> = (0..n - 1).map(|k| restrict_target(&legs[k + 1], &legs[k])).collect();
    FunctorImage { chain: assemble(&x.frame, &bs, &maps), legs }
}

pub fn mono_map(f: &ModMap, src: &FunctorImage, tgt: &FunctorImage) -> ModMap {
    let n = chain_len(&f.src);
    let f0 = component(f, 0);
    let comps: Vec<ModMap> = (0..n).map(|k| restrict(&f0, &src.legs[k], &tgt.legs[k])).collect();
    chain_map(&src.chain, &tgt.chain, &comps)
}

/// `Epi`: branch `k` is the image of the composite from the last branch into branch `k`.
pub fn epi(x: &Rep) -> FunctorImage {
    let n = chain_len(x);
    let legs: Vec<ModMap> = (0..n).map(|k| image(&composite(x, k, n - 1)).2).collect();
    let bs: Vec<Rep> = legs.iter().map(|l| l.src.clone()).collect();
    let maps: Vec<ModMap> = (0..n - 1).map(|k| restrict(&phi(x, k), &legs[k + 1], &legs[k])).collect();
    FunctorImage { chain: assemble(&x.frame, &bs, &maps), legs }
}

pub fn epi_map(f: &ModMap, src: &FunctorImage, tgt: &FunctorImage) -> ModMap {
    let n = chain_len(&f.src);
    let comps: Vec<ModMap> = (0..n).map(|k| restrict(&component(f, k), &src.legs[k], &tgt.legs[k])).collect();
    chain_map(&src.chain, &tgt.chain, &comps)
}

// ---------------------------------------------------------------------------
// Mimo and Mepi

/// Minimal monomorphic approximation: branch `i` gains injective envelopes of
/// the kernels of `phi(i), ..., phi(n-2)`.
pub fn mimo(x: &Rep, seed: u64) -> Rep {
    let n = chain_len(x);
    let frame = x.frame.base().unwrap().clone();
    let ph = phis(x);
    let mut ik = Vec::new();
    let mut ext = Vec::new();
    for f in &ph {
        let (kr, incl) = kernel(f);
        let (i, env) = injective_envelope(&kr);
        ext.push(extend_along(&env, &incl, seed).expect("maps into injectives extend along monomorphisms"));
        ik.push(i);
    }
    let sums: Vec<DirectSum> = (0..n)
        .map(|i| {
            let mut parts = vec![branch(x, i)];
            parts.extend(ik.iter().skip(i).cloned());
            direct_sum(&frame, &parts)
        })
        .collect();
    let maps: Vec<ModMap> = (0..n - 1)
        .map(|i| {
            let (src, tgt) = (&sums[i + 1], &sums[i]);
            let mut grid: Vec<Vec<Option<ModMap>>> = vec![vec![None; src.len()]; tgt.len()];
            grid[0][0] = Some(ph[i].clone());
            grid[1][0] = Some(ext[i].clone());
            for j in 1..src.len() {
                grid[j + 1][j] = Some(ModMap::identity(&src.incl[j].src));
            }
            DirectSum::grid(src, tgt, &grid)
        })
        .collect();
    let bs: Vec<Rep> = sums.iter().map(|s| s.sum.clone()).collect();
    assemble(&x.frame, &bs, &maps)
}

/// Minimal epimorphic approximation: branch `k` gains projective covers of
/// the cokernels of `phi(k-1), ..., phi(0)`.
pub fn mepi(x: &Rep) -> Rep {
    let n = chain_len(x);
    let frame = x.frame.base().unwrap().clone();
    let ph = phis(x);
    let mut pc = Vec::new();
    let mut lifts = Vec::new();
    for f in &ph {
        let (_, q) = cokernel(f);
        let (p, e) = projective_cover(&q.tgt);
        lifts.push(lift_projective(&e, &q));
        pc.push(p);
    }
    let sums: Vec<DirectSum> = (0..n)
        .map(|k| {
            let mut parts = vec![branch(x, k)];
            parts.extend((0..k).rev().map(|j| pc[j].clone()));
            direct_sum(&frame, &parts)
        })
        .collect();
    let maps: Vec<ModMap> = (0..n - 1)
        .map(|k| {
            let (src, tgt) = (&sums[k + 1], &sums[k]);
            let mut grid: Vec<Vec<Option<ModMap>>> = vec![vec![None; src.len()]; tgt.len()];
            grid[0][0] = Some(ph[k].clone());
            grid[0][1] = Some(lifts[k].clone());
            for j in 1..tgt.len() {
                grid[j][j + 1] = Some(ModMap::identity(&tgt.incl[j].src));
            }
            DirectSum::grid(src, tgt, &grid)
        })
        .collect();
    let bs: Vec<Rep> = sums.iter().map(|s| s.sum.clone()).collect();
    assemble(&x.frame, &bs, &maps)
}

// ---------------------------------------------------------------------------
// branchwise functors

/// Apply a module functor to every branch and structure map.
pub fn branchwise<D>(x: &Rep, obj: impl Fn(&Rep) -> D, rep_of: impl Fn(&D) -> Rep, map: impl Fn(&ModMap, &D, &D) -> ModMap) -> Rep {
    let n = chain_len(x);
    let data: Vec<D> = (0..n).map(|i| obj(&branch(x, i))).collect();
    let bs: Vec<Rep> = data.iter().map(&rep_of).collect();
    let maps: Vec<ModMap> = (0..n - 1).map(|i| map(&phi(x, i), &data[i + 1], &data[i])).collect();
    assemble(&x.frame, &bs, &maps)
}

pub fn tau_branchwise(x: &Rep) -> Rep {
    use crate::repmod::{tau_data, tau_map};
    branchwise(x, tau_data, |d| d.rep.clone(), tau_map)
}

pub fn tau_inv_branchwise(x: &Rep) -> Rep {
    use crate::repmod::{tau_inv_data, tau_inv_map};
    branchwise(x, tau_inv_data, |d| d.rep.clone(), tau_inv_map)
}

pub fn omega_inv_branchwise(x: &Rep) -> Rep {
    use crate::repmod::{omega_inv, omega_inv_map};
    branchwise(x, omega_inv, Rep::clone, |f, _, _| omega_inv_map(f))
}

pub fn omega_branchwise(x: &Rep) -> Rep {
    use crate::repmod::{omega, omega_map};
    branchwise(x, omega, Rep::clone, |f, _, _| omega_map(f))
}

/// Cone of a map `f: M -> N`: the cokernel of `(f, envelope): M -> N ⊕ I(M)`.
pub fn cone(f: &ModMap) -> Rep {
    let frame = f.src.frame.clone();
    let (i, env) = injective_envelope(&f.src);
    let ds = direct_sum(&frame, &[f.tgt.clone(), i]);
    let u = ds.vcat(&[f.clone(), env], &f.src);
    cokernel(&u).0
}
