//! Knitting Auslander–Reiten quivers of module categories and of the
//! monomorphism and epimorphism categories.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::artrans::{ar_sequence, ar_sequence_s, local_radical, tau_s_inv, TauMethod};
use crate::error::{Error, Result};
use crate::exactlin::Mat;
use crate::io::{chain_from_json, chain_label, chain_to_json, module_from_json, module_label, module_to_json, ChainJson};
use crate::morcat::{cok, m_embed};
use crate::repmod::{decompose, hom, is_injective, is_iso, is_projective, radical, tau_inv, ModMap, Rep};

pub const DEFAULT_MAX_OBJECTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    /// Monomorphism category.
    S,
    /// Epimorphism category.
    F,
    /// Modules over the algebra itself.
    Mod,
}

impl std::str::FromStr for Category {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" | "mono" => Ok(Category::S),
            "f" | "epi" => Ok(Category::F),
            "mod" => Ok(Category::Mod),
            _ => Err(Error::Input(format!("unknown category {s}; use S, F or mod"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub label: String,
    pub object: Rep,
    pub projective: bool,
    pub injective: bool,
}

#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub algebra: String,
    pub n: Option<usize>,
    pub category: Category,
    pub nodes: Vec<Node>,
    /// Irreducible maps `(from, to, multiplicity)`.
    pub arrows: Vec<(usize, usize, usize)>,
    /// `(z, τ z)` for non-projective `z`.
    pub tau: Vec<(usize, usize)>,
}

impl ArQuiver {
    pub fn projective_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.projective).count()
    }

    pub fn nonprojective_count(&self) -> usize {
        self.nodes.len() - self.projective_count()
    }

    pub fn predecessors(&self, z: usize) -> BTreeMap<usize, usize> {
        self.arrows.iter().filter(|a| a.1 == z).map(|a| (a.0, a.2)).collect()
    }

    pub fn successors(&self, z: usize) -> BTreeMap<usize, usize> {
        self.arrows.iter().filter(|a| a.0 == z).map(|a| (a.1, a.2)).collect()
    }

    pub fn tau_of(&self, z: usize) -> Option<usize> {
        self.tau.iter().find(|t| t.0 == z).map(|t| t.1)
    }

    /// Predecessors of each non-projective node equal the successors of its translate.
    pub fn mesh_consistent(&self) -> bool {
        self.tau.iter().all(|&(z, w)| self.predecessors(z) == self.successors(w))
    }

    pub fn find(&self, x: &Rep, seed: u64) -> Option<usize> {
        self.nodes.iter().position(|n| n.object.dims == x.dims && is_iso(&n.object, x, seed))
    }
}

fn label_of(alg: &Algebra, x: &Rep, seed: u64) -> Result<String> {
    if x.frame.chain_len().is_some() {
        chain_label(alg, x, seed)
    } else {
        module_label(alg, x, seed)
    }
}

/// Limits on a knitting run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_objects: usize,
    /// Largest total dimension allowed for a single indecomposable.
    pub max_dim: usize,
}

impl Budget {
    /// The dimension of the regular representation of the category plus two
    /// copies of the algebra. The representation-finite cases we know peak
    /// well under this; past it the objects grow and knitting slows sharply.
    pub fn for_category(alg: &Algebra, n: usize, category: Category, max_objects: usize) -> Budget {
        let copies = match category {
            Category::Mod => 1,
            _ => n * (n + 1) / 2,
        };
        Budget { max_objects, max_dim: (copies + 2) * alg.dim() }
    }
}

/// Knit the quiver of the given category with the default size guard.
pub fn knit(alg: &Arc<Algebra>, n: usize, category: Category, max_objects: usize, seed: u64) -> Result<ArQuiver> {
    knit_with(alg, n, category, Budget::for_category(alg, n, category, max_objects), seed)
}

/// Knit the quiver of the given category; fails with `Budget` once more than
/// `max_objects` indecomposables have been found, or `SizeBudget` once one of
/// them is larger than `max_dim`.
pub fn knit_with(alg: &Arc<Algebra>, n: usize, category: Category, budget: Budget, seed: u64) -> Result<ArQuiver> {
    match category {
        Category::F => {
            let q = knit_with(alg, n, Category::S, budget, seed)?;
            transport_cok(alg, q, seed)
        }
        _ => Knitter::new(alg, n, category, budget, seed)?.run(),
    }
}

struct Knitter<'a> {
    alg: &'a Arc<Algebra>,
    category: Category,
    n: usize,
    budget: Budget,
    seed: u64,
    injectives: Vec<Rep>,
    q: ArQuiver,
    arrows: BTreeMap<(usize, usize), usize>,
}

impl<'a> Knitter<'a> {
    fn new(alg: &'a Arc<Algebra>, n: usize, category: Category, budget: Budget, seed: u64) -> Result<Self> {
        if category == Category::S && n < 1 {
            return Err(Error::Input("chain length must be positive".into()));
        }
        let f = alg.frame();
        let injectives = match category {
            Category::S => (0..alg.nverts()).flat_map(|x| (1..=n).map(move |i| (x, i))).map(|(x, i)| m_embed(alg, n, i, &f.inj(x))).collect(),
            _ => (0..alg.nverts()).map(|x| f.inj(x)).collect(),
        };
        Ok(Knitter {
            alg,
            category,
            n,
            budget,
            seed,
            injectives,
            q: ArQuiver {
                algebra: alg.name.clone(),
                n: (category != Category::Mod).then_some(n),
                category,
                nodes: Vec::new(),
                arrows: Vec::new(),
                tau: Vec::new(),
            },
            arrows: BTreeMap::new(),
        })
    }

    fn projectives(&self) -> Vec<Rep> {
        match self.category {
            Category::S => {
                let cf = self.alg.chain_frame(self.n);
                (0..cf.nverts()).map(|z| cf.proj(z)).collect()
            }
            _ => {
                let f = self.alg.frame();
                (0..f.nverts()).map(|x| f.proj(x)).collect()
            }
        }
    }

    fn is_inj(&self, x: &Rep) -> bool {
        match self.category {
            Category::S => self.injectives.iter().any(|i| i.dims == x.dims && is_iso(i, x, self.seed)),
            _ => is_injective(x),
        }
    }

    /// Index of `x`, adding it if new.
    fn intern(&mut self, x: Rep) -> Result<usize> {
        if let Some(i) = self.q.find(&x, self.seed) {
            return Ok(i);
        }
        if self.q.nodes.len() >= self.budget.max_objects {
            return Err(Error::Budget(self.budget.max_objects));
        }
        if x.total_dim() > self.budget.max_dim {
            return Err(Error::SizeBudget(self.budget.max_dim));
        }
        let node = Node {
            label: label_of(self.alg, &x, self.seed)?,
            projective: is_projective(&x),
            injective: self.is_inj(&x),
            object: x,
        };
        self.q.nodes.push(node);
        Ok(self.q.nodes.len() - 1)
    }

    /// Indecomposable summands in a reproducible order.
    fn summands(&self, m: &Rep) -> Result<Vec<Rep>> {
        let mut parts: Vec<Rep> = decompose(m, self.seed)?.into_iter().map(|s| s.rep).collect();
        parts.sort_by(|a, b| a.dims.cmp(&b.dims));
        Ok(parts)
    }

    fn add_arrows_into(&mut self, z: usize, middle: &Rep) -> Result<()> {
        for part in self.summands(middle)? {
            let y = self.intern(part)?;
            *self.arrows.entry((y, z)).or_insert(0) += 1;
        }
        Ok(())
    }

    fn run(mut self) -> Result<ArQuiver> {
        let mut start = self.projectives();
        start.extend(self.injectives.clone());
        for x in start {
            for part in self.summands(&x)? {
                self.intern(part)?;
            }
        }
        let mut next = 0;
        while next < self.q.nodes.len() {
            let z = next;
            next += 1;
            let node = self.q.nodes[z].clone();
            if node.projective {
                let (r, _) = radical(&node.object);
                self.add_arrows_into(z, &r)?;
            } else {
                let seq = match self.category {
                    Category::S => ar_sequence_s(&node.object, self.seed)?,
                    _ => ar_sequence(&node.object, self.seed)?,
                };
                let t = self.intern(seq.left)?;
                self.q.tau.push((z, t));
                self.add_arrows_into(z, &seq.middle)?;
            }
            if !node.injective {
                let u = match self.category {
                    Category::S => tau_s_inv(&node.object, TauMethod::MimoTauCok),
                    _ => tau_inv(&node.object),
                };
                for part in self.summands(&u)? {
                    self.intern(part)?;
                }
            }
        }
        self.q.arrows = self.arrows.iter().map(|(&(a, b), &m)| (a, b, m)).collect();
        Ok(self.q)
    }
}

/// Carry a quiver of the monomorphism category to the epimorphism category along `Cok`.
fn transport_cok(alg: &Algebra, q: ArQuiver, seed: u64) -> Result<ArQuiver> {
    let nodes = q
        .nodes
        .into_iter()
        .map(|nd| {
            let c = cok(&nd.object).chain;
            Ok(Node { label: chain_label(alg, &c, seed)?, object: c, projective: nd.projective, injective: nd.injective })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ArQuiver { category: Category::F, nodes, ..q })
}

/// Dimension of rad(X, Y) / rad²(X, Y), with rad² formed through the objects of `known`.
pub fn irreducible_count(x: &Rep, y: &Rep, known: &[Rep], seed: u64) -> Result<usize> {
    let p = x.p();
    let rad = |a: &Rep, b: &Rep| -> Result<Vec<ModMap>> {
        if a.dims == b.dims && is_iso(a, b, seed) {
            // transport the local radical of End(a) along an isomorphism a -> b
            let iso = crate::repmod::find_iso(a, b, seed).expect("isomorphic");
            Ok(local_radical(a, seed)?.into_iter().map(|r| iso.after(&r)).collect())
        } else {
            Ok(hom(a, b).basis)
        }
    };
    let hxy = hom(x, y);
    let r1 = rad(x, y)?;
    let span = |maps: &[ModMap]| -> usize {
        let cols: Vec<Vec<u32>> = maps.iter().map(|f| hxy.coords(f)).collect();
        Mat::from_fn(p, hxy.dim(), cols.len(), |i, j| cols[j][i]).rank()
    };
    let mut sq = Vec::new();
    for z in known {
        let a = rad(x, z)?;
        if a.is_empty() {
            continue;
        }
        let b = rad(z, y)?;
        for g in &b {
            for f in &a {
                sq.push(g.after(f));
            }
        }
    }
    Ok(span(&r1) - span(&sq))
}

/// Counts of projective and non-projective indecomposables in the monomorphism category.
pub fn count_check(alg: &Arc<Algebra>, n: usize, max_objects: usize, seed: u64) -> Result<(usize, usize)> {
    let q = knit(alg, n, Category::S, max_objects, seed)?;
    Ok((q.projective_count(), q.nonprojective_count()))
}

// ---------------------------------------------------------------------------
// export

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn export_dot(q: &ArQuiver) -> String {
    let mut out = String::from("digraph ar {\n  rankdir=LR;\n");
    for (i, nd) in q.nodes.iter().enumerate() {
        let shape = if nd.projective { ",shape=box" } else { "" };
        out.push_str(&format!("  n{i} [label=\"{}\"{shape}];\n", dot_escape(&nd.label)));
    }
    for &(a, b, m) in &q.arrows {
        if m == 1 {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        } else {
            out.push_str(&format!("  n{a} -> n{b} [label=\"{m}\"];\n"));
        }
    }
    for &(z, t) in &q.tau {
        out.push_str(&format!("  n{z} -> n{t} [style=dashed];\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub label: String,
    pub projective: bool,
    pub injective: bool,
    pub dims: Vec<usize>,
    pub object: Value,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ArrowJson {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TauJson {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct QuiverJson {
    pub algebra: String,
    pub category: Category,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub projectives: usize,
    pub nonprojectives: usize,
    pub nodes: Vec<NodeJson>,
    pub arrows: Vec<ArrowJson>,
    pub tau: Vec<TauJson>,
}

pub fn to_json(alg: &Algebra, q: &ArQuiver, seed: u64) -> Result<QuiverJson> {
    let nodes = q
        .nodes
        .iter()
        .enumerate()
        .map(|(id, nd)| {
            let object = if nd.object.frame.chain_len().is_some() {
                serde_json::to_value(chain_to_json(alg, &nd.object, seed)?)?
            } else {
                module_to_json(alg, &nd.object)
            };
            Ok(NodeJson {
                id,
                label: nd.label.clone(),
                projective: nd.projective,
                injective: nd.injective,
                dims: nd.object.dims.clone(),
                object,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuiverJson {
        algebra: q.algebra.clone(),
        category: q.category,
        n: q.n,
        projectives: q.projective_count(),
        nonprojectives: q.nonprojective_count(),
        nodes,
        arrows: q.arrows.iter().map(|&(from, to, multiplicity)| ArrowJson { from, to, multiplicity }).collect(),
        tau: q.tau.iter().map(|&(from, to)| TauJson { from, to }).collect(),
    })
}

pub fn export_json(alg: &Algebra, q: &ArQuiver, seed: u64) -> Result<String> {
    Ok(serde_json::to_string_pretty(&to_json(alg, q, seed)?)? + "\n")
}

/// Rebuild a quiver from its JSON dump.
pub fn from_json(alg: &Arc<Algebra>, j: &QuiverJson) -> Result<ArQuiver> {
    let nodes = j
        .nodes
        .iter()
        .map(|nd| {
            let object = if j.n.is_some() {
                let cj: ChainJson = serde_json::from_value(nd.object.clone())?;
                chain_from_json(alg, &cj)?
            } else {
                module_from_json(alg, &nd.object)?
            };
            Ok(Node { label: nd.label.clone(), object, projective: nd.projective, injective: nd.injective })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ArQuiver {
        algebra: j.algebra.clone(),
        n: j.n,
        category: j.category,
        nodes,
        arrows: j.arrows.iter().map(|a| (a.from, a.to, a.multiplicity)).collect(),
        tau: j.tau.iter().map(|t| (t.from, t.to)).collect(),
    })
}
