//! Finite-dimensional representations of a bound quiver ("frame"): homomorphism
//! spaces, kernels and cokernels, covers and envelopes, decomposition into
//! indecomposables, isomorphism tests, syzygies, the Nakayama functor and the
//! Auslander–Reiten translate.

use std::collections::HashMap;
use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactlin::{self, add_mod, linear_roots, mul_mod, rng, sub_mod, Mat, Splitting};

/// An indecomposable projective of a frame, generated by basis vector 0 at vertex `top`.
#[derive(Clone, Debug)]
pub struct ProjData {
    pub top: usize,
    pub dims: Vec<usize>,
    pub mats: Vec<Mat>,
    /// words[z][j]: arrows (traversal order) taking the generator to basis vector j at z.
    pub words: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug)]
pub enum FrameKind {
    Module { nakayama: Option<(usize, usize)> },
    /// Chains of `n` modules; vertex (i, v) has index `i * nv + v`, branch `i` counted from 0.
    Chain { n: usize, base: Arc<Frame> },
}

#[derive(Clone, Debug)]
struct InjCache {
    reps: Vec<(Vec<usize>, Vec<Mat>)>,
    /// For each arrow a: x -> y, blocks of the induced map I_y -> I_x.
    arrow_maps: Vec<Vec<Mat>>,
}

/// A bound quiver together with its indecomposable projectives.
pub struct Frame {
    pub p: u32,
    pub vertex_names: Vec<String>,
    pub arrows: Vec<(usize, usize)>,
    pub arrow_names: Vec<String>,
    /// Each relation: (coefficient, arrows in traversal order) terms.
    pub relations: Vec<Vec<(u32, Vec<usize>)>>,
    pub kind: FrameKind,
    pub projs: Vec<ProjData>,
    in_arrows: Vec<Vec<usize>>,
    out_arrows: Vec<Vec<usize>>,
    inj: OnceLock<InjCache>,
}

impl std::fmt::Debug for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Frame({} vertices, {} arrows)", self.nverts(), self.arrows.len())
    }
}

impl Frame {
    pub fn new(
        p: u32,
        vertex_names: Vec<String>,
        arrows: Vec<(usize, usize)>,
        arrow_names: Vec<String>,
        relations: Vec<Vec<(u32, Vec<usize>)>>,
        kind: FrameKind,
        projs: Vec<ProjData>,
    ) -> Frame {
        let nv = vertex_names.len();
        let mut in_arrows = vec![vec![]; nv];
        let mut out_arrows = vec![vec![]; nv];
        for (a, &(s, t)) in arrows.iter().enumerate() {
            out_arrows[s].push(a);
            in_arrows[t].push(a);
        }
        Frame { p, vertex_names, arrows, arrow_names, relations, kind, projs, in_arrows, out_arrows, inj: OnceLock::new() }
    }

    /// The frame of chains `X_n -> ... -> X_1` over a module frame.
    pub fn chain(base: &Arc<Frame>, n: usize) -> Frame {
        let p = base.p;
        let nv = base.nverts();
        let na = base.arrows.len();
        let vid = |i: usize, v: usize| i * nv + v;
        let mut vertex_names = Vec::with_capacity(n * nv);
        for i in 0..n {
            for v in 0..nv {
                vertex_names.push(format!("{}@{}", base.vertex_names[v], i + 1));
            }
        }
        let mut arrows = Vec::new();
        let mut names = Vec::new();
        for i in 0..n {
            for (a, &(s, t)) in base.arrows.iter().enumerate() {
                arrows.push((vid(i, s), vid(i, t)));
                names.push(format!("{}@{}", base.arrow_names[a], i + 1));
            }
        }
        let phi = |i: usize, v: usize| n * na + i * nv + v;
        for i in 0..n.saturating_sub(1) {
            for v in 0..nv {
                arrows.push((vid(i + 1, v), vid(i, v)));
                names.push(format!("phi{}@{}", i + 1, base.vertex_names[v]));
            }
        }
        let mut relations = Vec::new();
        for i in 0..n {
            for r in &base.relations {
                relations.push(r.iter().map(|(c, w)| (*c, w.iter().map(|&a| i * na + a).collect())).collect());
            }
        }
        for i in 0..n.saturating_sub(1) {
            for (a, &(s, t)) in base.arrows.iter().enumerate() {
                relations.push(vec![
                    (1, vec![(i + 1) * na + a, phi(i, t)]),
                    (p - 1, vec![phi(i, s), i * na + a]),
                ]);
            }
        }
        let mut projs = Vec::with_capacity(n * nv);
        for b in 0..n {
            for pd in &base.projs {
                let mut dims = vec![0; n * nv];
                let mut words = vec![vec![]; n * nv];
                for j in 0..=b {
                    for x in 0..nv {
                        dims[vid(j, x)] = pd.dims[x];
                        let prefix: Vec<usize> = (j..b).rev().map(|i| phi(i, pd.top)).collect();
                        words[vid(j, x)] = pd.words[x]
                            .iter()
                            .map(|w| prefix.iter().copied().chain(w.iter().map(|&a| j * na + a)).collect())
                            .collect();
                    }
                }
                let mut mats = Vec::with_capacity(arrows.len());
                for (ai, &(s, t)) in arrows.iter().enumerate() {
                    let m = if ai < n * na {
                        let (i, a) = (ai / na, ai % na);
                        if i <= b { pd.mats[a].clone() } else { Mat::zeros(p, dims[t], dims[s]) }
                    } else if dims[s] > 0 {
                        Mat::identity(p, dims[s])
                    } else {
                        Mat::zeros(p, dims[t], 0)
                    };
                    mats.push(m);
                }
                projs.push(ProjData { top: vid(b, pd.top), dims, mats, words });
            }
        }
        Frame::new(p, vertex_names, arrows, names, relations, FrameKind::Chain { n, base: base.clone() }, projs)
    }

    pub fn nverts(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn narrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    /// Number of chain positions, or `None` for a module frame.
    pub fn chain_len(&self) -> Option<usize> {
        match self.kind {
            FrameKind::Chain { n, .. } => Some(n),
            FrameKind::Module { .. } => None,
        }
    }

    pub fn base(&self) -> Option<&Arc<Frame>> {
        match &self.kind {
            FrameKind::Chain { base, .. } => Some(base),
            FrameKind::Module { .. } => None,
        }
    }

    /// Projective vertex indexed by the vertex at its top.
    pub fn proj(self: &Arc<Self>, x: usize) -> Rep {
        let pd = &self.projs[x];
        Rep::from_parts(self, pd.dims.clone(), pd.mats.clone())
    }

    fn inj_cache(self: &Arc<Self>) -> &InjCache {
        self.inj.get_or_init(|| {
            let nus: Vec<NuData> = (0..self.nverts()).map(|x| nu_data(&self.proj(x))).collect();
            let reps = nus.iter().map(|d| (d.rep.dims.clone(), d.rep.mats.clone())).collect();
            let arrow_maps = self
                .arrows
                .iter()
                .enumerate()
                .map(|(a, &(x, y))| {
                    let rho = self.arrow_map(a);
                    nu_map(&rho, &nus[y], &nus[x]).blocks
                })
                .collect();
            InjCache { reps, arrow_maps }
        })
    }

    /// The indecomposable injective with socle at `x`, computed as the Nakayama image of P_x.
    pub fn inj(self: &Arc<Self>, x: usize) -> Rep {
        let (dims, mats) = &self.inj_cache().reps[x];
        Rep::from_parts(self, dims.clone(), mats.clone())
    }

    /// Right multiplication by an arrow a: x -> y as a map P_y -> P_x.
    pub fn arrow_map(self: &Arc<Self>, a: usize) -> ModMap {
        let (x, y) = self.arrows[a];
        let px = self.proj(x);
        let v = px.mats[a].col(0);
        yoneda(&self.proj(y), y, &px, &v)
    }

    /// The map I_y -> I_x induced by an arrow x -> y.
    pub fn inj_arrow_map(self: &Arc<Self>, a: usize) -> ModMap {
        let (x, y) = self.arrows[a];
        ModMap::from_parts(&self.inj(y), &self.inj(x), self.inj_cache().arrow_maps[a].clone())
    }

    pub fn simple(self: &Arc<Self>, x: usize) -> Rep {
        let mut dims = vec![0; self.nverts()];
        dims[x] = 1;
        let mats = self.arrows.iter().map(|&(s, t)| Mat::zeros(self.p, dims[t], dims[s])).collect();
        Rep::from_parts(self, dims, mats)
    }
}

/// Map from a frame projective P_x sending the generator to `v` in M_x.
pub fn yoneda(px: &Rep, x: usize, m: &Rep, v: &[u32]) -> ModMap {
    let f = px.frame.clone();
    let pd = &f.projs[x];
    let blocks = (0..f.nverts())
        .map(|z| {
            let mut b = Mat::zeros(f.p, m.dims[z], pd.dims[z]);
            for (j, w) in pd.words[z].iter().enumerate() {
                let col = m.apply_word(w, v);
                for (i, c) in col.into_iter().enumerate() {
                    b.set(i, j, c);
                }
            }
            b
        })
        .collect();
    ModMap::from_parts(px, m, blocks)
}

// ---------------------------------------------------------------------------
// representations

#[derive(Debug)]
pub struct GenData {
    /// Generators as (vertex, vector): lifts of a basis of the top.
    pub gens: Vec<(usize, Vec<u32>)>,
    /// Per vertex: (generator, word) for each column of the Yoneda matrix.
    pub slots: Vec<Vec<(usize, Vec<usize>)>>,
    pub yoneda: Vec<Mat>,
    pub right_inv: Vec<Mat>,
    pub kernel: Vec<Mat>,
}

pub struct RepInner {
    pub frame: Arc<Frame>,
    pub dims: Vec<usize>,
    /// One matrix per arrow, target x source.
    pub mats: Vec<Mat>,
    gens: OnceLock<GenData>,
}

/// A representation: a vector space per vertex and a matrix per arrow.
#[derive(Clone)]
pub struct Rep(Arc<RepInner>);

impl Deref for Rep {
    type Target = RepInner;
    fn deref(&self) -> &RepInner {
        &self.0
    }
}

impl std::fmt::Debug for Rep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rep{:?}", self.dims)
    }
}

impl Rep {
    /// Build and validate a representation.
    pub fn new(frame: &Arc<Frame>, dims: Vec<usize>, mats: Vec<Mat>) -> Result<Rep> {
        if dims.len() != frame.nverts() {
            return Err(Error::Dimension(format!("{} dimensions for {} vertices", dims.len(), frame.nverts())));
        }
        if mats.len() != frame.narrows() {
            return Err(Error::Dimension(format!("{} matrices for {} arrows", mats.len(), frame.narrows())));
        }
        for (a, &(s, t)) in frame.arrows.iter().enumerate() {
            let m = &mats[a];
            if m.rows != dims[t] || m.cols != dims[s] || m.p != frame.p {
                return Err(Error::Dimension(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    frame.arrow_names[a], dims[t], dims[s], m.rows, m.cols
                )));
            }
        }
        let r = Rep::from_parts(frame, dims, mats);
        for (k, rel) in frame.relations.iter().enumerate() {
            if !r.relation_value(rel).is_zero() {
                return Err(Error::Domain(format!("representation violates relation {k}")));
            }
        }
        Ok(r)
    }

    pub fn from_parts(frame: &Arc<Frame>, dims: Vec<usize>, mats: Vec<Mat>) -> Rep {
        Rep(Arc::new(RepInner { frame: frame.clone(), dims, mats, gens: OnceLock::new() }))
    }

    pub fn zero(frame: &Arc<Frame>) -> Rep {
        Rep::from_parts(frame, vec![0; frame.nverts()], frame.arrows.iter().map(|_| Mat::zeros(frame.p, 0, 0)).collect())
    }

    pub fn p(&self) -> u32 {
        self.frame.p
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    fn relation_value(&self, rel: &[(u32, Vec<usize>)]) -> Mat {
        let p = self.p();
        let (s, t) = {
            let w = &rel[0].1;
            (self.frame.arrows[w[0]].0, self.frame.arrows[*w.last().unwrap()].1)
        };
        let mut acc = Mat::zeros(p, self.dims[t], self.dims[s]);
        for (c, w) in rel {
            acc = acc.axpy(*c, &self.word_matrix(s, w));
        }
        acc
    }

    /// Matrix of a path starting at vertex `s`.
    pub fn word_matrix(&self, s: usize, w: &[usize]) -> Mat {
        let mut m = Mat::identity(self.p(), self.dims[s]);
        for &a in w {
            m = self.mats[a].mul(&m);
        }
        m
    }

    pub fn apply_word(&self, w: &[usize], v: &[u32]) -> Vec<u32> {
        let mut x = v.to_vec();
        for &a in w {
            x = self.mats[a].mul_vec(&x);
        }
        x
    }

    /// Column basis of the radical at each vertex.
    pub fn radical_bases(&self) -> Vec<Mat> {
        let f = &self.frame;
        (0..f.nverts())
            .map(|z| {
                let parts: Vec<&Mat> = f.in_arrows(z).iter().map(|&a| &self.mats[a]).collect();
                Mat::hstack(self.p(), self.dims[z], &parts).col_basis()
            })
            .collect()
    }

    /// Column basis of the socle at each vertex.
    pub fn socle_bases(&self) -> Vec<Mat> {
        let f = &self.frame;
        (0..f.nverts())
            .map(|z| {
                let parts: Vec<&Mat> = f.out_arrows(z).iter().map(|&a| &self.mats[a]).collect();
                Mat::vstack(self.p(), self.dims[z], &parts).kernel_basis()
            })
            .collect()
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_bases().iter().zip(&self.dims).map(|(r, d)| d - r.cols).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_bases().iter().map(|s| s.cols).collect()
    }

    pub fn gens(&self) -> &GenData {
        self.gens.get_or_init(|| self.compute_gens())
    }

    fn compute_gens(&self) -> GenData {
        let f = self.frame.clone();
        let p = self.p();
        let nv = f.nverts();
        let mut gens = Vec::new();
        for (z, rad) in self.radical_bases().iter().enumerate() {
            let c = exactlin::complement_basis(rad, self.dims[z]);
            for j in 0..c.cols {
                gens.push((z, c.col(j)));
            }
        }
        let mut slots = vec![vec![]; nv];
        let mut yon = Vec::with_capacity(nv);
        let mut right_inv = Vec::with_capacity(nv);
        let mut kernel = Vec::with_capacity(nv);
        for z in 0..nv {
            for (g, (x, _)) in gens.iter().enumerate() {
                for w in &f.projs[*x].words[z] {
                    slots[z].push((g, w.clone()));
                }
            }
            let mut y = Mat::zeros(p, self.dims[z], slots[z].len());
            for (j, (g, w)) in slots[z].iter().enumerate() {
                for (i, c) in self.apply_word(w, &gens[*g].1).into_iter().enumerate() {
                    y.set(i, j, c);
                }
            }
            let r = y.rref();
            debug_assert_eq!(r.rank, self.dims[z], "generators must span");
            let sq = y.select_cols(&r.pivots);
            let inv = sq.inverse().expect("pivot columns are independent");
            let mut ri = Mat::zeros(p, slots[z].len(), self.dims[z]);
            for (k, &c) in r.pivots.iter().enumerate() {
                for i in 0..self.dims[z] {
                    ri.set(c, i, inv.get(k, i));
                }
            }
            kernel.push(exactlin::kernel_basis_from(&r, y.cols, p));
            yon.push(y);
            right_inv.push(ri);
        }
        GenData { gens, slots, yoneda: yon, right_inv, kernel }
    }

    pub fn top_vertices(&self) -> Vec<usize> {
        self.gens().gens.iter().map(|g| g.0).collect()
    }
}

// ---------------------------------------------------------------------------
// maps

#[derive(Clone)]
pub struct ModMap {
    pub src: Rep,
    pub tgt: Rep,
    pub blocks: Vec<Mat>,
}

impl std::fmt::Debug for ModMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModMap({:?} -> {:?}, {:?})", self.src.dims, self.tgt.dims, self.blocks)
    }
}

impl ModMap {
    pub fn from_parts(src: &Rep, tgt: &Rep, blocks: Vec<Mat>) -> ModMap {
        ModMap { src: src.clone(), tgt: tgt.clone(), blocks }
    }

    /// Build and check that the blocks intertwine the arrow actions.
    pub fn new(src: &Rep, tgt: &Rep, blocks: Vec<Mat>) -> Result<ModMap> {
        let nv = src.frame.nverts();
        if blocks.len() != nv {
            return Err(Error::Dimension(format!("{} blocks for {nv} vertices", blocks.len())));
        }
        for z in 0..nv {
            if blocks[z].rows != tgt.dims[z] || blocks[z].cols != src.dims[z] {
                return Err(Error::Dimension(format!("block at vertex {z} has the wrong shape")));
            }
        }
        let f = ModMap::from_parts(src, tgt, blocks);
        if !f.is_hom() {
            return Err(Error::Domain("blocks do not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub fn zero(src: &Rep, tgt: &Rep) -> ModMap {
        let p = src.p();
        let blocks = (0..src.frame.nverts()).map(|z| Mat::zeros(p, tgt.dims[z], src.dims[z])).collect();
        ModMap::from_parts(src, tgt, blocks)
    }

    pub fn identity(m: &Rep) -> ModMap {
        let p = m.p();
        ModMap::from_parts(m, m, m.dims.iter().map(|&d| Mat::identity(p, d)).collect())
    }

    pub fn is_hom(&self) -> bool {
        self.src.frame.arrows.iter().enumerate().all(|(a, &(s, t))| {
            self.tgt.mats[a].mul(&self.blocks[s]) == self.blocks[t].mul(&self.src.mats[a])
        })
    }

    /// `self ∘ f`
    pub fn after(&self, f: &ModMap) -> ModMap {
        let blocks = self.blocks.iter().zip(&f.blocks).map(|(g, h)| g.mul(h)).collect();
        ModMap::from_parts(&f.src, &self.tgt, blocks)
    }

    pub fn add(&self, o: &ModMap) -> ModMap {
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect();
        ModMap::from_parts(&self.src, &self.tgt, blocks)
    }

    pub fn sub(&self, o: &ModMap) -> ModMap {
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.sub(b)).collect();
        ModMap::from_parts(&self.src, &self.tgt, blocks)
    }

    pub fn scale(&self, c: u32) -> ModMap {
        ModMap::from_parts(&self.src, &self.tgt, self.blocks.iter().map(|b| b.scale(c)).collect())
    }

    pub fn neg(&self) -> ModMap {
        ModMap::from_parts(&self.src, &self.tgt, self.blocks.iter().map(Mat::neg).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols)
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.rows == b.cols && b.rank() == b.rows)
    }

    pub fn inverse(&self) -> Option<ModMap> {
        let blocks = self.blocks.iter().map(|b| if b.rows == 0 && b.cols == 0 { Some(b.clone()) } else { b.inverse() });
        let blocks: Option<Vec<Mat>> = blocks.collect();
        Some(ModMap::from_parts(&self.tgt, &self.src, blocks?))
    }

    /// Entries of all blocks, concatenated.
    pub fn flat(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data.iter().copied()).collect()
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    /// Trace of an endomorphism summed over vertices.
    pub fn trace(&self) -> u32 {
        let p = self.src.p();
        self.blocks.iter().fold(0, |s, b| add_mod(s, b.trace(), p))
    }

    fn values_on_gens(&self) -> Vec<u32> {
        self.src.gens().gens.iter().flat_map(|(x, v)| self.blocks[*x].mul_vec(v)).collect()
    }
}

/// The map determined by the images of the generators of `m` (which must be consistent).
pub fn map_from_gen_values(m: &Rep, n: &Rep, vals: &[Vec<u32>]) -> ModMap {
    let gd = m.gens();
    let p = m.p();
    let blocks = (0..m.frame.nverts())
        .map(|z| {
            let mut v = Mat::zeros(p, n.dims[z], gd.slots[z].len());
            for (j, (g, w)) in gd.slots[z].iter().enumerate() {
                for (i, c) in n.apply_word(w, &vals[*g]).into_iter().enumerate() {
                    v.set(i, j, c);
                }
            }
            v.mul(&gd.right_inv[z])
        })
        .collect();
    ModMap::from_parts(m, n, blocks)
}

// ---------------------------------------------------------------------------
// homomorphism spaces

pub struct HomSpace {
    pub src: Rep,
    pub tgt: Rep,
    pub basis: Vec<ModMap>,
    /// Positions in the generator-value vector that serve as coordinates.
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a map in the basis.
    pub fn coords(&self, f: &ModMap) -> Vec<u32> {
        let v = f.values_on_gens();
        self.free.iter().map(|&i| v[i]).collect()
    }

    pub fn combine(&self, c: &[u32]) -> ModMap {
        let mut acc = ModMap::zero(&self.src, &self.tgt);
        for (b, &x) in self.basis.iter().zip(c) {
            if x != 0 {
                acc = acc.add(&b.scale(x));
            }
        }
        acc
    }

    pub fn random(&self, rng: &mut impl rand::Rng) -> ModMap {
        let p = self.src.p();
        let c: Vec<u32> = (0..self.dim()).map(|_| rng.gen_range(0..p)).collect();
        self.combine(&c)
    }
}

/// Basis of Hom(M, N), via values on generators subject to the relations among them.
pub fn hom(m: &Rep, n: &Rep) -> HomSpace {
    let gd = m.gens();
    let p = m.p();
    let f = &m.frame;
    let mut offsets = Vec::with_capacity(gd.gens.len());
    let mut total = 0;
    for (x, _) in &gd.gens {
        offsets.push(total);
        total += n.dims[*x];
    }
    let mut word_cache: HashMap<(usize, Vec<usize>), Mat> = HashMap::new();
    let mut eq_rows: Vec<Mat> = Vec::new();
    for z in 0..f.nverts() {
        let k = &gd.kernel[z];
        if k.cols == 0 || n.dims[z] == 0 {
            continue;
        }
        for (j, (g, w)) in gd.slots[z].iter().enumerate() {
            let _ = j;
            let x = gd.gens[*g].0;
            word_cache.entry((x, w.clone())).or_insert_with(|| n.word_matrix(x, w));
        }
        for c in 0..k.cols {
            let mut e = Mat::zeros(p, n.dims[z], total);
            for (j, (g, w)) in gd.slots[z].iter().enumerate() {
                let kv = k.get(j, c);
                if kv == 0 {
                    continue;
                }
                let x = gd.gens[*g].0;
                let nw = &word_cache[&(x, w.clone())];
                for r in 0..nw.rows {
                    for cc in 0..nw.cols {
                        let v = nw.get(r, cc);
                        if v != 0 {
                            let col = offsets[*g] + cc;
                            e.set(r, col, add_mod(e.get(r, col), mul_mod(kv, v, p), p));
                        }
                    }
                }
            }
            eq_rows.push(e);
        }
    }
    let refs: Vec<&Mat> = eq_rows.iter().collect();
    let sys = Mat::vstack(p, total, &refs);
    let r = sys.rref();
    let sol = exactlin::kernel_basis_from(&r, total, p);
    let free = exactlin::free_columns(&r, total);
    // images of every slot for all basis elements at once: word matrix times generator values
    let per_gen: Vec<Mat> = gd
        .gens
        .iter()
        .enumerate()
        .map(|(g, (x, _))| sol.select_rows(&(offsets[g]..offsets[g] + n.dims[*x]).collect::<Vec<_>>()))
        .collect();
    let slot_images: Vec<Vec<Mat>> = (0..f.nverts())
        .map(|z| {
            gd.slots[z]
                .iter()
                .map(|(g, w)| {
                    let x = gd.gens[*g].0;
                    let nw = word_cache.entry((x, w.clone())).or_insert_with(|| n.word_matrix(x, w));
                    nw.mul(&per_gen[*g])
                })
                .collect()
        })
        .collect();
    let basis = (0..sol.cols)
        .map(|b| {
            let blocks = (0..f.nverts())
                .map(|z| {
                    let imgs = &slot_images[z];
                    Mat::from_fn(p, n.dims[z], imgs.len(), |i, j| imgs[j].get(i, b)).mul(&gd.right_inv[z])
                })
                .collect();
            ModMap::from_parts(m, n, blocks)
        })
        .collect();
    HomSpace { src: m.clone(), tgt: n.clone(), basis, free }
}

pub fn hom_dim(m: &Rep, n: &Rep) -> usize {
    hom(m, n).dim()
}

/// Solve `Σ c_j t_j = target` for coefficient vector `c`, given flattened candidates.
fn solve_combination(p: u32, cands: &[Vec<u32>], target: &[u32], extra: Option<&mut dyn FnMut(&Mat) -> Vec<u32>>) -> Option<Vec<u32>> {
    let rows = target.len();
    let a = Mat::from_fn(p, rows, cands.len(), |i, j| cands[j][i]);
    let b = Mat::from_fn(p, rows, 1, |i, _| target[i]);
    let x = a.solve(&b).ok().flatten()?;
    let mut c = x.col(0);
    if let Some(f) = extra {
        let k = a.kernel_basis();
        let add = f(&k);
        for (ci, ai) in c.iter_mut().zip(add) {
            *ci = add_mod(*ci, ai, p);
        }
    }
    Some(c)
}

/// Some `h` with `e ∘ h = g`, if one exists.
pub fn factor_through(g: &ModMap, e: &ModMap) -> Option<ModMap> {
    let h = hom(&g.src, &e.src);
    let cands: Vec<Vec<u32>> = h.basis.iter().map(|b| e.after(b).flat()).collect();
    let c = solve_combination(g.src.p(), &cands, &g.flat(), None)?;
    Some(h.combine(&c))
}

/// Some `h` with `h ∘ i = g`, if one exists. A nonzero `seed` adds a random
/// element of the solution space's homogeneous part.
pub fn extend_along(g: &ModMap, i: &ModMap, seed: u64) -> Option<ModMap> {
    let h = hom(&i.tgt, &g.tgt);
    let p = g.src.p();
    let cands: Vec<Vec<u32>> = h.basis.iter().map(|b| b.after(i).flat()).collect();
    let c = if seed == 0 {
        solve_combination(p, &cands, &g.flat(), None)?
    } else {
        let mut r = rng(seed);
        let mut pick = |k: &Mat| {
            let w: Vec<u32> = (0..k.cols).map(|_| rand::Rng::gen_range(&mut r, 0..p)).collect();
            k.mul_vec(&w)
        };
        solve_combination(p, &cands, &g.flat(), Some(&mut pick))?
    };
    Some(h.combine(&c))
}

/// Lift `g: P -> N` along an epimorphism `e: Q -> N` when `P` is projective.
pub fn lift_projective(g: &ModMap, e: &ModMap) -> ModMap {
    let gd = g.src.gens();
    let vals: Vec<Vec<u32>> = gd
        .gens
        .iter()
        .map(|(x, v)| {
            let target = g.blocks[*x].mul_vec(v);
            let b = Mat::col_vec(g.src.p(), &target);
            e.blocks[*x].solve(&b).ok().flatten().expect("lift along an epimorphism").col(0)
        })
        .collect();
    map_from_gen_values(&g.src, &e.src, &vals)
}

// ---------------------------------------------------------------------------
// sub, quotient, kernel, image, cokernel, sums

fn left_inverse(b: &Mat) -> Mat {
    Splitting::new(b, b.rows).sub_coords()
}

fn right_inverse(b: &Mat) -> Mat {
    left_inverse(&b.transpose()).transpose()
}

/// Submodule spanned by invariant column bases, with its inclusion.
pub fn submodule(m: &Rep, bases: Vec<Mat>) -> (Rep, ModMap) {
    let f = &m.frame;
    let lefts: Vec<Mat> = bases.iter().map(left_inverse).collect();
    let mats = f
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| lefts[t].mul(&m.mats[a].mul(&bases[s])))
        .collect();
    let sub = Rep::from_parts(f, bases.iter().map(|b| b.cols).collect(), mats);
    let incl = ModMap::from_parts(&sub, m, bases);
    (sub, incl)
}

/// Quotient by an invariant subspace, with the projection.
pub fn quotient(m: &Rep, bases: &[Mat]) -> (Rep, ModMap) {
    let f = &m.frame;
    let splits: Vec<Splitting> = bases.iter().zip(&m.dims).map(|(b, &d)| Splitting::new(b, d)).collect();
    let qs: Vec<Mat> = splits.iter().map(Splitting::quotient_map).collect();
    let secs: Vec<Mat> = splits.iter().map(Splitting::section).collect();
    let mats = f.arrows.iter().enumerate().map(|(a, &(s, t))| qs[t].mul(&m.mats[a].mul(&secs[s]))).collect();
    let q = Rep::from_parts(f, qs.iter().map(|x| x.rows).collect(), mats);
    let proj = ModMap::from_parts(m, &q, qs);
    (q, proj)
}

pub fn kernel(f: &ModMap) -> (Rep, ModMap) {
    submodule(&f.src, f.blocks.iter().map(Mat::kernel_basis).collect())
}

/// Image with the corestriction `src -> im` and the inclusion `im -> tgt`.
pub fn image(f: &ModMap) -> (Rep, ModMap, ModMap) {
    let (im, incl) = submodule(&f.tgt, f.blocks.iter().map(Mat::col_basis).collect());
    let co = restrict_target(f, &incl);
    (im, co, incl)
}

pub fn cokernel(f: &ModMap) -> (Rep, ModMap) {
    let bases: Vec<Mat> = f.blocks.iter().map(Mat::col_basis).collect();
    quotient(&f.tgt, &bases)
}

/// Corestrict `f: M -> N` to a submodule `incl: B -> N` containing its image.
pub fn restrict_target(f: &ModMap, incl: &ModMap) -> ModMap {
    let blocks = f.blocks.iter().zip(&incl.blocks).map(|(b, i)| left_inverse(i).mul(b)).collect();
    ModMap::from_parts(&f.src, &incl.src, blocks)
}

/// The map `A -> B` induced by `f: M -> N` on submodules `a: A -> M`, `b: B -> N`.
pub fn restrict(f: &ModMap, a: &ModMap, b: &ModMap) -> ModMap {
    restrict_target(&f.after(a), b)
}

/// The map `A -> B` induced by `f: M -> N` on quotients `qa: M -> A`, `qb: N -> B`.
pub fn induce(f: &ModMap, qa: &ModMap, qb: &ModMap) -> ModMap {
    let blocks = (0..f.blocks.len()).map(|z| qb.blocks[z].mul(&f.blocks[z]).mul(&right_inverse(&qa.blocks[z]))).collect();
    ModMap::from_parts(&qa.tgt, &qb.tgt, blocks)
}

pub struct DirectSum {
    pub sum: Rep,
    pub incl: Vec<ModMap>,
    pub proj: Vec<ModMap>,
    offsets: Vec<Vec<usize>>,
}

pub fn direct_sum(frame: &Arc<Frame>, parts: &[Rep]) -> DirectSum {
    let p = frame.p;
    let nv = frame.nverts();
    let mut offsets = vec![vec![0; nv]; parts.len() + 1];
    for (k, r) in parts.iter().enumerate() {
        for z in 0..nv {
            offsets[k + 1][z] = offsets[k][z] + r.dims[z];
        }
    }
    let dims = offsets[parts.len()].clone();
    let mats = (0..frame.narrows())
        .map(|a| {
            let ms: Vec<&Mat> = parts.iter().map(|r| &r.mats[a]).collect();
            Mat::block_diag(p, &ms)
        })
        .collect();
    let sum = Rep::from_parts(frame, dims.clone(), mats);
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    for (k, r) in parts.iter().enumerate() {
        let ib: Vec<Mat> = (0..nv)
            .map(|z| Mat::from_fn(p, dims[z], r.dims[z], |i, j| u32::from(i == offsets[k][z] + j)))
            .collect();
        let pb: Vec<Mat> = ib.iter().map(Mat::transpose).collect();
        incl.push(ModMap::from_parts(r, &sum, ib));
        proj.push(ModMap::from_parts(&sum, r, pb));
    }
    DirectSum { sum, incl, proj, offsets }
}

impl DirectSum {
    pub fn len(&self) -> usize {
        self.incl.len()
    }

    pub fn is_empty(&self) -> bool {
        self.incl.is_empty()
    }

    /// Map out of the sum with the given components.
    pub fn hcat(&self, maps: &[ModMap], tgt: &Rep) -> ModMap {
        let p = tgt.p();
        let nv = tgt.frame.nverts();
        let blocks = (0..nv)
            .map(|z| {
                let mut b = Mat::zeros(p, tgt.dims[z], self.sum.dims[z]);
                for (k, f) in maps.iter().enumerate() {
                    b.set_block(0, self.offsets[k][z], &f.blocks[z]);
                }
                b
            })
            .collect();
        ModMap::from_parts(&self.sum, tgt, blocks)
    }

    /// Map into the sum with the given components.
    pub fn vcat(&self, maps: &[ModMap], src: &Rep) -> ModMap {
        let p = src.p();
        let nv = src.frame.nverts();
        let blocks = (0..nv)
            .map(|z| {
                let mut b = Mat::zeros(p, self.sum.dims[z], src.dims[z]);
                for (k, f) in maps.iter().enumerate() {
                    b.set_block(self.offsets[k][z], 0, &f.blocks[z]);
                }
                b
            })
            .collect();
        ModMap::from_parts(src, &self.sum, blocks)
    }

    /// Map between sums given by a grid `grid[i][j]: src_j -> tgt_i`.
    pub fn grid(src: &DirectSum, tgt: &DirectSum, grid: &[Vec<Option<ModMap>>]) -> ModMap {
        let p = src.sum.p();
        let nv = src.sum.frame.nverts();
        let blocks = (0..nv)
            .map(|z| {
                let mut b = Mat::zeros(p, tgt.sum.dims[z], src.sum.dims[z]);
                for (i, row) in grid.iter().enumerate() {
                    for (j, f) in row.iter().enumerate() {
                        if let Some(f) = f {
                            b.set_block(tgt.offsets[i][z], src.offsets[j][z], &f.blocks[z]);
                        }
                    }
                }
                b
            })
            .collect();
        ModMap::from_parts(&src.sum, &tgt.sum, blocks)
    }
}

// ---------------------------------------------------------------------------
// covers and envelopes

/// Projective cover `P -> M` with the list of summand vertices.
pub fn projective_cover(m: &Rep) -> (Rep, ModMap) {
    let f = m.frame.clone();
    let gens = &m.gens().gens;
    let parts: Vec<Rep> = gens.iter().map(|(x, _)| f.proj(*x)).collect();
    let ds = direct_sum(&f, &parts);
    let maps: Vec<ModMap> = gens.iter().zip(&parts).map(|((x, v), px)| yoneda(px, *x, m, v)).collect();
    let e = ds.hcat(&maps, m);
    (ds.sum, e)
}

/// Injective envelope `M -> I`.
pub fn injective_envelope(m: &Rep) -> (Rep, ModMap) {
    let f = m.frame.clone();
    let p = m.p();
    let socs = m.socle_bases();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    for (x, s) in socs.iter().enumerate() {
        if s.cols == 0 {
            continue;
        }
        let lam = Splitting::new(s, m.dims[x]).sub_coords();
        for r in 0..lam.rows {
            let l = lam.row(r).to_vec();
            let ix = f.inj(x);
            let blocks = (0..f.nverts())
                .map(|z| {
                    let words = &f.projs[z].words[x];
                    let mut b = Mat::zeros(p, words.len(), m.dims[z]);
                    for (j, w) in words.iter().enumerate() {
                        let row = Mat::from_fn(p, 1, m.dims[x], |_, c| l[c]).mul(&m.word_matrix(z, w));
                        for c in 0..m.dims[z] {
                            b.set(j, c, row.get(0, c));
                        }
                    }
                    b
                })
                .collect();
            maps.push(ModMap::from_parts(m, &ix, blocks));
            parts.push(ix);
        }
    }
    let ds = direct_sum(&f, &parts);
    let e = ds.vcat(&maps, m);
    (ds.sum, e)
}

pub fn is_projective(m: &Rep) -> bool {
    let gens = &m.gens().gens;
    let total: usize = gens.iter().map(|(x, _)| m.frame.projs[*x].dims.iter().sum::<usize>()).sum();
    total == m.total_dim()
}

pub fn is_injective(m: &Rep) -> bool {
    let f = m.frame.clone();
    let total: usize = m.socle_dims().iter().enumerate().map(|(x, &d)| d * f.inj(x).total_dim()).sum();
    total == m.total_dim()
}

pub fn radical(m: &Rep) -> (Rep, ModMap) {
    submodule(m, m.radical_bases())
}

pub fn socle(m: &Rep) -> (Rep, ModMap) {
    submodule(m, m.socle_bases())
}

/// Syzygy: kernel of the projective cover.
pub fn omega(m: &Rep) -> Rep {
    let (_, e) = projective_cover(m);
    kernel(&e).0
}

/// Cosyzygy: cokernel of the injective envelope.
pub fn omega_inv(m: &Rep) -> Rep {
    let (_, e) = injective_envelope(m);
    cokernel(&e).0
}

/// Syzygy on a map, via a lift between projective covers.
pub fn omega_map(f: &ModMap) -> ModMap {
    let (_, em) = projective_cover(&f.src);
    let (_, en) = projective_cover(&f.tgt);
    let (_, km) = kernel(&em);
    let (_, kn) = kernel(&en);
    let lift = lift_projective(&f.after(&em), &en);
    restrict(&lift, &km, &kn)
}

/// Cosyzygy on a map, via an extension between injective envelopes.
pub fn omega_inv_map(f: &ModMap) -> ModMap {
    let (_, em) = injective_envelope(&f.src);
    let (_, en) = injective_envelope(&f.tgt);
    let (_, qm) = cokernel(&em);
    let (_, qn) = cokernel(&en);
    let ext = extend_along(&en.after(f), &em, 0).expect("injective envelopes extend");
    induce(&ext, &qm, &qn)
}

// ---------------------------------------------------------------------------
// Nakayama functor

/// `ν(M)` together with the homomorphism spaces its coordinates refer to.
pub struct NuData {
    pub rep: Rep,
    pub homs: Vec<HomSpace>,
}

/// `ν(M)_z = D Hom(M, P_z)`.
pub fn nu_data(m: &Rep) -> NuData {
    let f = m.frame.clone();
    let p = m.p();
    let homs: Vec<HomSpace> = (0..f.nverts()).map(|z| hom(m, &f.proj(z))).collect();
    let mats = f
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(x, y))| {
            let rho = f.arrow_map(a);
            let hx = &homs[x];
            let hy = &homs[y];
            let mut t = Mat::zeros(p, hx.dim(), hy.dim());
            for (j, b) in hy.basis.iter().enumerate() {
                for (i, c) in hx.coords(&rho.after(b)).into_iter().enumerate() {
                    t.set(i, j, c);
                }
            }
            t.transpose()
        })
        .collect();
    let rep = Rep::from_parts(&f, homs.iter().map(HomSpace::dim).collect(), mats);
    NuData { rep, homs }
}

/// `ν(f): ν(M) -> ν(N)` for `f: M -> N`.
pub fn nu_map(f: &ModMap, src: &NuData, tgt: &NuData) -> ModMap {
    let p = f.src.p();
    let blocks = (0..f.src.frame.nverts())
        .map(|z| {
            let hm = &src.homs[z];
            let hn = &tgt.homs[z];
            let mut u = Mat::zeros(p, hm.dim(), hn.dim());
            for (j, b) in hn.basis.iter().enumerate() {
                for (i, c) in hm.coords(&b.after(f)).into_iter().enumerate() {
                    u.set(i, j, c);
                }
            }
            u.transpose()
        })
        .collect();
    ModMap::from_parts(&src.rep, &tgt.rep, blocks)
}

/// `ν⁻(N)_x = Hom(I_x, N)`.
pub fn nu_inv_data(n: &Rep) -> NuData {
    let f = n.frame.clone();
    let p = n.p();
    let homs: Vec<HomSpace> = (0..f.nverts()).map(|x| hom(&f.inj(x), n)).collect();
    let mats = f
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(x, y))| {
            let rho = f.inj_arrow_map(a);
            let (hx, hy) = (&homs[x], &homs[y]);
            let mut t = Mat::zeros(p, hy.dim(), hx.dim());
            for (j, b) in hx.basis.iter().enumerate() {
                for (i, c) in hy.coords(&b.after(&rho)).into_iter().enumerate() {
                    t.set(i, j, c);
                }
            }
            t
        })
        .collect();
    let rep = Rep::from_parts(&f, homs.iter().map(HomSpace::dim).collect(), mats);
    NuData { rep, homs }
}

pub fn nu_inv_map(g: &ModMap, src: &NuData, tgt: &NuData) -> ModMap {
    let p = g.src.p();
    let blocks = (0..g.src.frame.nverts())
        .map(|x| {
            let (hs, ht) = (&src.homs[x], &tgt.homs[x]);
            let mut u = Mat::zeros(p, ht.dim(), hs.dim());
            for (j, b) in hs.basis.iter().enumerate() {
                for (i, c) in ht.coords(&g.after(b)).into_iter().enumerate() {
                    u.set(i, j, c);
                }
            }
            u
        })
        .collect();
    ModMap::from_parts(&src.rep, &tgt.rep, blocks)
}

// ---------------------------------------------------------------------------
// Auslander–Reiten translate

/// Minimal projective presentation `Q --d--> P0 --e--> M`.
pub struct Presentation {
    pub p0: Rep,
    pub e: ModMap,
    pub q: Rep,
    pub d: ModMap,
}

pub fn presentation(m: &Rep) -> Presentation {
    let (p0, e) = projective_cover(m);
    let (om, iota) = kernel(&e);
    let (q, e1) = projective_cover(&om);
    let d = iota.after(&e1);
    Presentation { p0, e, q, d }
}

/// Minimal injective copresentation `M --e--> I0 --d--> I1`.
pub struct Copresentation {
    pub i0: Rep,
    pub e: ModMap,
    pub i1: Rep,
    pub d: ModMap,
}

pub fn copresentation(m: &Rep) -> Copresentation {
    let (i0, e) = injective_envelope(m);
    let (_, q) = cokernel(&e);
    let (i1, e1) = injective_envelope(&q.tgt);
    let d = e1.after(&q);
    Copresentation { i0, e, i1, d }
}

/// `τM = ker(ν(Q) -> ν(P0))` with the data needed to apply τ to maps.
pub struct TauData {
    pub rep: Rep,
    pub pres: Presentation,
    nu_q: NuData,
    incl: ModMap,
}

pub fn tau_data(m: &Rep) -> TauData {
    let pres = presentation(m);
    let nu_q = nu_data(&pres.q);
    let nu_p0 = nu_data(&pres.p0);
    let nd = nu_map(&pres.d, &nu_q, &nu_p0);
    let (rep, incl) = kernel(&nd);
    TauData { rep, pres, nu_q, incl }
}

pub fn tau(m: &Rep) -> Rep {
    tau_data(m).rep
}

/// τ on a map `f: M -> N`, from lifts to the presentations.
pub fn tau_map(f: &ModMap, src: &TauData, tgt: &TauData) -> ModMap {
    let f0 = lift_projective(&f.after(&src.pres.e), &tgt.pres.e);
    // f0 restricted to syzygies, then lifted to the second terms
    let (_, km) = kernel(&src.pres.e);
    let (_, kn) = kernel(&tgt.pres.e);
    let om = restrict(&f0, &km, &kn);
    let (_, cm) = projective_cover(&km.src);
    let (_, cn) = projective_cover(&kn.src);
    debug_assert_eq!(cm.src.dims, src.pres.q.dims);
    let cm = ModMap::from_parts(&src.pres.q, &cm.tgt, cm.blocks);
    let cn = ModMap::from_parts(&tgt.pres.q, &cn.tgt, cn.blocks);
    let f1 = lift_projective(&om.after(&cm), &cn);
    let nf1 = nu_map(&f1, &src.nu_q, &tgt.nu_q);
    restrict(&nf1, &src.incl, &tgt.incl)
}

/// `τ⁻N = coker(ν⁻(I0) -> ν⁻(I1))` with data for maps.
pub struct TauInvData {
    pub rep: Rep,
    pub copres: Copresentation,
    nu_i1: NuData,
    proj: ModMap,
}

pub fn tau_inv_data(n: &Rep) -> TauInvData {
    let copres = copresentation(n);
    let nu_i0 = nu_inv_data(&copres.i0);
    let nu_i1 = nu_inv_data(&copres.i1);
    let nd = nu_inv_map(&copres.d, &nu_i0, &nu_i1);
    let (rep, proj) = cokernel(&nd);
    TauInvData { rep, copres, nu_i1, proj }
}

pub fn tau_inv(n: &Rep) -> Rep {
    tau_inv_data(n).rep
}

pub fn tau_inv_map(f: &ModMap, src: &TauInvData, tgt: &TauInvData) -> ModMap {
    let g0 = extend_along(&tgt.copres.e.after(f), &src.copres.e, 0).expect("injective extension");
    let (_, qm) = cokernel(&src.copres.e);
    let (_, qn) = cokernel(&tgt.copres.e);
    let c = induce(&g0, &qm, &qn);
    let (_, em) = injective_envelope(&qm.tgt);
    let (_, en) = injective_envelope(&qn.tgt);
    let em = ModMap::from_parts(&em.src, &src.copres.i1, em.blocks);
    let en = ModMap::from_parts(&en.src, &tgt.copres.i1, en.blocks);
    let g1 = extend_along(&en.after(&c), &em, 0).expect("injective extension");
    let ng1 = nu_inv_map(&g1, &src.nu_i1, &tgt.nu_i1);
    induce(&ng1, &src.proj, &tgt.proj)
}

// ---------------------------------------------------------------------------
// decomposition and isomorphism

pub struct Summand {
    pub rep: Rep,
    pub incl: ModMap,
    pub proj: ModMap,
}

const RANDOM_TRIES: usize = 32;

/// Eigenvalues in GF(p) of an endomorphism, and whether its characteristic polynomial splits.
fn eigenvalues(f: &ModMap, seed: u64) -> Result<(Vec<u32>, bool)> {
    let p = f.src.p();
    let mut roots = Vec::new();
    let mut splits = true;
    for b in &f.blocks {
        if b.rows == 0 {
            continue;
        }
        let cp = b.charpoly()?;
        let r = linear_roots(&cp, p, seed)?;
        // multiplicities: divide out the roots and check a constant remains
        let mut rest = cp.clone();
        for &x in &r {
            loop {
                let (q, rem) = exactlin::poly_divrem(&rest, &[sub_mod(0, x, p), 1], p);
                if exactlin::poly_trim(rem).is_empty() {
                    rest = q;
                } else {
                    break;
                }
            }
        }
        if exactlin::poly_deg(&rest) != Some(0) {
            splits = false;
        }
        roots.extend(r);
    }
    roots.sort_unstable();
    roots.dedup();
    Ok((roots, splits))
}

/// Per-vertex Fitting pieces of `f - λ`, if both are nonzero.
fn fitting_pieces(f: &ModMap, lambda: u32) -> Option<(Vec<Mat>, Vec<Mat>)> {
    let p = f.src.p();
    let n = f.src.total_dim().max(1) as u64;
    let mut ks = Vec::new();
    let mut is = Vec::new();
    for b in &f.blocks {
        let g = b.sub(&Mat::scalar(p, b.rows, lambda));
        let gn = g.pow(n);
        ks.push(gn.kernel_basis());
        is.push(gn.col_basis());
    }
    let kd: usize = ks.iter().map(|k| k.cols).sum();
    let id: usize = is.iter().map(|k| k.cols).sum();
    (kd > 0 && id > 0).then_some((ks, is))
}

/// Whether the endomorphism algebra is local with residue field GF(p), given a
/// basis whose elements each have a single eigenvalue.
fn local_certificate(end: &HomSpace, lambdas: &[u32]) -> bool {
    let p = end.src.p();
    let id = ModMap::identity(&end.src);
    let rad: Vec<ModMap> = end.basis.iter().zip(lambdas).map(|(b, &l)| b.sub(&id.scale(l))).collect();
    let flat_basis = |maps: &[ModMap]| -> Vec<ModMap> {
        if maps.is_empty() {
            return vec![];
        }
        let rows = maps[0].flat().len();
        let m = Mat::from_fn(p, rows, maps.len(), |_, _| 0);
        let mut m = m;
        for (j, f) in maps.iter().enumerate() {
            for (i, v) in f.flat().into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m.rref().pivots.iter().map(|&j| maps[j].clone()).collect()
    };
    let r = flat_basis(&rad);
    if r.len() + 1 != end.dim() {
        return false;
    }
    let n = end.src.total_dim();
    let mut power = r.clone();
    for _ in 0..=n {
        if power.is_empty() {
            return true;
        }
        let prods: Vec<ModMap> = power.iter().flat_map(|a| r.iter().map(move |b| a.after(b))).collect();
        let nz: Vec<ModMap> = prods.into_iter().filter(|m| !m.is_zero()).collect();
        power = flat_basis(&nz);
    }
    power.is_empty()
}

/// Rank of the trace form `(a, b) -> tr(a b)` on the endomorphism algebra.
/// Its radical is a nil ideal when `p > dim M`, so rank 1 means local.
fn trace_form_rank(end: &HomSpace) -> usize {
    let p = end.src.p();
    let d = end.dim();
    let nv = end.src.dims.len();
    let trans: Vec<Vec<Mat>> = end.basis.iter().map(|b| b.blocks.iter().map(Mat::transpose).collect()).collect();
    let mut g = Mat::zeros(p, d, d);
    for i in 0..d {
        for j in i..d {
            let mut acc = 0u64;
            for z in 0..nv {
                let (a, bt) = (&end.basis[i].blocks[z], &trans[j][z]);
                for (x, y) in a.data.iter().zip(&bt.data) {
                    acc = (acc + u64::from(*x) * u64::from(*y)) % u64::from(p);
                }
            }
            g.set(i, j, acc as u32);
            g.set(j, i, acc as u32);
        }
    }
    g.rank()
}

/// Split off a proper summand when the endomorphism algebra allows it.
fn try_split(m: &Rep, seed: u64) -> Result<Option<(Vec<Mat>, Vec<Mat>)>> {
    let end = hom(m, m);
    if end.dim() <= 1 {
        return Ok(None);
    }
    let random_split = || -> Result<Option<(Vec<Mat>, Vec<Mat>)>> {
        let mut r = rng(seed ^ 0x5eed_0f_de_c0);
        for _ in 0..RANDOM_TRIES {
            let f = end.random(&mut r);
            for l in eigenvalues(&f, seed)?.0 {
                if let Some(pieces) = fitting_pieces(&f, l) {
                    return Ok(Some(pieces));
                }
            }
        }
        Ok(None)
    };
    let undecided = || Error::Undecided(format!("module with dimension vector {:?}", m.dims));
    if m.total_dim() < m.p() as usize {
        // the trace form decides locality; only a splitting remains to be found
        if trace_form_rank(&end) == 1 {
            return Ok(None);
        }
        if let Some(pieces) = random_split()? {
            return Ok(Some(pieces));
        }
    }
    let mut lambdas = Vec::new();
    let mut all_single = true;
    for b in &end.basis {
        let (roots, splits) = eigenvalues(b, seed)?;
        for &l in &roots {
            if let Some(pieces) = fitting_pieces(b, l) {
                return Ok(Some(pieces));
            }
        }
        if roots.len() == 1 && splits {
            lambdas.push(roots[0]);
        } else {
            all_single = false;
        }
    }
    if all_single && local_certificate(&end, &lambdas) {
        return Ok(None);
    }
    random_split()?.map(Some).ok_or_else(undecided)
}

/// Decompose into indecomposable summands with inclusions and projections.
pub fn decompose(m: &Rep, seed: u64) -> Result<Vec<Summand>> {
    if m.is_zero() {
        return Ok(vec![]);
    }
    let Some((ks, is)) = try_split(m, seed)? else {
        let id = ModMap::identity(m);
        return Ok(vec![Summand { rep: m.clone(), incl: id.clone(), proj: id }]);
    };
    let p = m.p();
    let mut out = Vec::new();
    // projections from the splitting M = K ⊕ I
    let invs: Vec<Mat> = ks
        .iter()
        .zip(&is)
        .zip(&m.dims)
        .map(|((k, i), &d)| Mat::hstack(p, d, &[k, i]).inverse().unwrap_or_else(|| Mat::zeros(p, 0, 0)))
        .collect();
    for (which, bases) in [(0usize, ks.clone()), (1, is.clone())] {
        let (sub, incl) = submodule(m, bases.clone());
        let proj_blocks = (0..m.dims.len())
            .map(|z| {
                let kc = ks[z].cols;
                let d = m.dims[z];
                if which == 0 {
                    invs[z].block(0, 0, kc, d)
                } else {
                    invs[z].block(kc, 0, d - kc, d)
                }
            })
            .collect();
        let proj = ModMap::from_parts(m, &sub, proj_blocks);
        for s in decompose(&sub, seed)? {
            out.push(Summand { rep: s.rep.clone(), incl: incl.after(&s.incl), proj: s.proj.after(&proj) });
        }
    }
    Ok(out)
}

pub fn is_indecomposable(m: &Rep, seed: u64) -> Result<bool> {
    Ok(!m.is_zero() && try_split(m, seed)?.is_none())
}

/// An isomorphism `M -> N`, if one is found.
pub fn find_iso(m: &Rep, n: &Rep, seed: u64) -> Option<ModMap> {
    if m.dims != n.dims {
        return None;
    }
    if m.is_zero() {
        return Some(ModMap::zero(m, n));
    }
    if m.top_dims() != n.top_dims() || m.socle_dims() != n.socle_dims() {
        return None;
    }
    let h = hom(m, n);
    if h.dim() == 0 {
        return None;
    }
    for b in &h.basis {
        if b.is_iso() {
            return Some(b.clone());
        }
    }
    let mut r = rng(seed ^ 0x150);
    for _ in 0..64 {
        let f = h.random(&mut r);
        if f.is_iso() {
            return Some(f);
        }
    }
    None
}

/// Isomorphism test; a negative answer rests on 64 random elements of Hom(M, N)
/// all failing to be invertible.
pub fn is_iso(m: &Rep, n: &Rep, seed: u64) -> bool {
    find_iso(m, n, seed).is_some()
}

/// Drop projective summands, returning the rest with inclusion and projection.
pub fn strip_projectives(m: &Rep, seed: u64) -> Result<Summand> {
    strip_where(m, seed, is_projective)
}

pub fn strip_injectives(m: &Rep, seed: u64) -> Result<Summand> {
    strip_where(m, seed, is_injective)
}

fn strip_where(m: &Rep, seed: u64, drop: fn(&Rep) -> bool) -> Result<Summand> {
    let f = m.frame.clone();
    let keep: Vec<Summand> = decompose(m, seed)?.into_iter().filter(|s| !drop(&s.rep)).collect();
    let parts: Vec<Rep> = keep.iter().map(|s| s.rep.clone()).collect();
    let ds = direct_sum(&f, &parts);
    let incl = ds.hcat(&keep.iter().map(|s| s.incl.clone()).collect::<Vec<_>>(), m);
    let proj = ds.vcat(&keep.iter().map(|s| s.proj.clone()).collect::<Vec<_>>(), m);
    Ok(Summand { rep: ds.sum, incl, proj })
}

/// Summands grouped into isomorphism classes with multiplicities.
pub fn group_summands(parts: Vec<Rep>, seed: u64) -> Vec<(Rep, usize)> {
    let mut out: Vec<(Rep, usize)> = Vec::new();
    for r in parts {
        match out.iter_mut().find(|(q, _)| is_iso(q, &r, seed)) {
            Some(e) => e.1 += 1,
            None => out.push((r, 1)),
        }
    }
    out
}

/// Maps M -> N that factor through a projective, as a subspace of Hom coordinates.
pub fn projective_maps(h: &HomSpace) -> Mat {
    let p = h.src.p();
    let (pc, e) = projective_cover(&h.tgt);
    let hp = hom(&h.src, &pc);
    let cols: Vec<Vec<u32>> = hp.basis.iter().map(|b| h.coords(&e.after(b))).collect();
    let m = Mat::from_fn(p, h.dim(), cols.len(), |i, j| cols[j][i]);
    m.col_basis()
}

pub fn stable_hom_dim(m: &Rep, n: &Rep) -> usize {
    let h = hom(m, n);
    h.dim() - projective_maps(&h).cols
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::exactlin::FieldSpec;

    fn dual_numbers() -> Arc<Algebra> {
        Algebra::nakayama(1, 2, FieldSpec::default()).unwrap()
    }

    #[test]
    fn projectives_are_projective_and_injective_over_selfinjective() {
        for a in [dual_numbers(), Algebra::three_vertex_selfinjective(FieldSpec::default()).unwrap()] {
            let f = a.frame();
            for x in 0..a.nverts() {
                assert!(is_projective(&f.proj(x)));
                assert!(is_injective(&f.proj(x)));
                assert!(is_injective(&f.inj(x)));
            }
        }
    }

    #[test]
    fn trace_form_detects_local_endomorphisms() {
        let a = dual_numbers();
        let (s, aa) = (a.uniserial(0, 1).unwrap(), a.uniserial(0, 2).unwrap());
        assert_eq!(trace_form_rank(&hom(&aa, &aa)), 1);
        let sum = direct_sum(&a.frame(), &[s.clone(), aa]).sum;
        assert_eq!(trace_form_rank(&hom(&sum, &sum)), 2);
        let twice = direct_sum(&a.frame(), &[s.clone(), s]).sum;
        assert_eq!(trace_form_rank(&hom(&twice, &twice)), 4);
    }

    #[test]
    fn hom_dims_over_dual_numbers() {
        let a = dual_numbers();
        let s = a.uniserial(0, 1).unwrap();
        let aa = a.uniserial(0, 2).unwrap();
        assert_eq!(hom_dim(&s, &s), 1);
        assert_eq!(hom_dim(&s, &aa), 1);
        assert_eq!(hom_dim(&aa, &s), 1);
        assert_eq!(hom_dim(&aa, &aa), 2);
        assert_eq!(stable_hom_dim(&s, &s), 1);
        assert_eq!(stable_hom_dim(&aa, &aa), 0);
    }

    #[test]
    fn hom_basis_elements_are_homs() {
        let a = Algebra::three_vertex_selfinjective(FieldSpec::default()).unwrap();
        let f = a.frame();
        let m = f.proj(0);
        let n = direct_sum(&f, &[f.proj(1), f.inj(2), f.simple(0)]).sum;
        for b in hom(&m, &n).basis.iter().chain(hom(&n, &m).basis.iter()) {
            assert!(b.is_hom());
        }
    }

    #[test]
    fn envelope_is_a_mono_hom() {
        let a = Algebra::three_vertex_selfinjective(FieldSpec::default()).unwrap();
        let f = a.frame();
        for x in 0..3 {
            let (_, e) = injective_envelope(&f.simple(x));
            assert!(e.is_hom() && e.is_mono());
            let (_, c) = projective_cover(&f.simple(x));
            assert!(c.is_hom() && c.is_epi());
        }
    }

    #[test]
    fn tau_of_simple_over_dual_numbers() {
        let a = dual_numbers();
        let s = a.uniserial(0, 1).unwrap();
        assert!(is_iso(&tau(&s), &s, 0));
        assert!(is_iso(&tau_inv(&s), &s, 0));
        assert!(is_iso(&omega(&s), &s, 0));
    }

    #[test]
    fn decompose_sum_of_uniserials() {
        let a = Algebra::nakayama(2, 3, FieldSpec::default()).unwrap();
        let f = a.frame();
        let parts = [a.uniserial(0, 2).unwrap(), a.uniserial(1, 1).unwrap(), a.uniserial(0, 2).unwrap()];
        let ds = direct_sum(&f, &parts);
        let pieces = decompose(&ds.sum, 0).unwrap();
        assert_eq!(pieces.len(), 3);
        let mut dims: Vec<usize> = pieces.iter().map(|s| s.rep.total_dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2, 2]);
        for s in &pieces {
            assert!(s.proj.after(&s.incl).is_iso());
        }
    }

    #[test]
    fn nakayama_tau_shifts_uniserials() {
        // over nakayama(m, t), τ U(v, l) = U(v + 1, l) for l < t
        let a = Algebra::nakayama(3, 3, FieldSpec::default()).unwrap();
        for v in 0..3 {
            for l in 1..3 {
                let u = a.uniserial(v, l).unwrap();
                let w = a.uniserial((v + 1) % 3, l).unwrap();
                assert!(is_iso(&tau(&u), &w, 0), "tau U({v},{l})");
                assert!(is_iso(&tau_inv(&w), &u, 0));
            }
        }
    }

    #[test]
    fn tau_on_maps_is_functorial() {
        let a = Algebra::nakayama(1, 3, FieldSpec::default()).unwrap();
        let m = a.uniserial(0, 2).unwrap();
        let s = a.uniserial(0, 1).unwrap();
        let h = hom(&m, &s);
        let f = &h.basis[0];
        let tm = tau_data(&m);
        let ts = tau_data(&s);
        let tf = tau_map(f, &tm, &ts);
        assert!(tf.is_hom());
        assert!(!tf.is_zero());
    }
}
