//! Nonsymmetric Jack polynomials `ζ_{α,T}` from the Yang-Baxter graph.
//!
//! Nodes are reached from the root `(0^N, T_0)` by jumps (changing `T` at
//! `α = 0`), steps (sorting `α` one adjacent swap at a time) and affine
//! steps (`α ↦ Φα = (α_2, …, α_N, α_1 + 1)`). The engine memoizes every node
//! it builds; each node is computed exactly once even under concurrent use.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::combinatorics::rank_perm;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::vvpoly::{JsonTerm, KappaContext, VvPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    Affine,
    /// `s_i` with `α_i < α_{i+1}`.
    Step(usize),
    /// `s_i` with `α_i = α_{i+1}`, moving `T` to `T^{(r_α(i))}`.
    Jump(usize),
}

/// Which descent the scheduler undoes first. Different choices give
/// different paths to the same node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    FirstDescent,
    LastDescent,
}

#[derive(Clone)]
pub struct GraphNode<S> {
    pub alpha: Vec<i64>,
    pub tableau: usize,
    pub xi: Vec<S>,
    pub rank: Permutation,
    pub zeta: Arc<VvPoly<S>>,
}

type Slot<S> = Arc<OnceLock<Result<Arc<VvPoly<S>>>>>;

pub struct JackEngine<S> {
    ctx: Arc<KappaContext<S>>,
    strategy: Strategy,
    memo: Mutex<HashMap<(Vec<i64>, usize), Slot<S>>>,
    degrees: Mutex<HashMap<i64, Result<()>>>,
    /// `jump_parent[t] = (t', i)`: `(0, T_t)` is the jump `s_i` from `(0, T_{t'})`.
    jump_parent: Vec<Option<(usize, usize)>>,
}

/// `ξ_i = α_i + 1 + κ c(r_α(i), T)`.
pub fn spectral_vector<S: Scalar>(ctx: &KappaContext<S>, alpha: &[i64], t: usize) -> Vec<S> {
    let r = rank_perm(alpha);
    let basis = ctx.basis();
    (1..=alpha.len())
        .map(|i| {
            S::from_i64(alpha[i - 1] + 1) + ctx.kappa().clone() * S::from_i64(basis.content(r.apply(i), t))
        })
        .collect()
}

/// `E_ε(α,T) = ∏_{i<j, α_i<α_j} (1 + εκ / (α_j − α_i + κ(c(r_α(j),T) − c(r_α(i),T))))`.
pub fn e_eps<S: Scalar>(ctx: &KappaContext<S>, alpha: &[i64], t: usize, eps: i64) -> Result<S> {
    let r = rank_perm(alpha);
    let basis = ctx.basis();
    let k = ctx.kappa().clone();
    let n = alpha.len();
    let mut acc = S::one();
    for i in 1..=n {
        for j in i + 1..=n {
            if alpha[i - 1] < alpha[j - 1] {
                let dc = basis.content(r.apply(j), t) - basis.content(r.apply(i), t);
                let den = S::from_i64(alpha[j - 1] - alpha[i - 1]) + k.clone() * S::from_i64(dc);
                if den.is_zero() {
                    return Err(Error::InadmissibleKappa(format!("zero denominator in E_eps at {alpha:?}")));
                }
                acc = acc * (S::one() + S::from_i64(eps) * k.clone() / den);
            }
        }
    }
    Ok(acc)
}

/// `κ / (ξ_i − ξ_{i+1})`, the coefficient shared by steps and jumps.
fn edge_coefficient<S: Scalar>(ctx: &KappaContext<S>, xi: &[S], i: usize) -> Result<S> {
    let d = xi[i - 1].clone() - xi[i].clone();
    if d.is_zero() {
        return Err(Error::InadmissibleKappa(format!("ξ_{i} = ξ_{}", i + 1)));
    }
    Ok(ctx.kappa().clone() / d)
}

/// Target label and coefficient `b` of an edge, after checking its precondition.
///
/// Steps and jumps map `ζ ↦ s_iζ − bζ`; the affine step has no coefficient.
pub fn edge_target<S: Scalar>(
    ctx: &KappaContext<S>,
    alpha: &[i64],
    t: usize,
    edge: Edge,
) -> Result<(Vec<i64>, usize, Option<S>)> {
    let n = alpha.len();
    let xi = spectral_vector(ctx, alpha, t);
    match edge {
        Edge::Affine => {
            let mut a: Vec<i64> = alpha[1..].to_vec();
            a.push(alpha[0] + 1);
            Ok((a, t, None))
        }
        Edge::Step(i) | Edge::Jump(i) if i == 0 || i >= n => {
            Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) })
        }
        Edge::Step(i) => {
            if alpha[i - 1] >= alpha[i] {
                return Err(Error::EdgePrecondition(format!("step s_{i} needs α_{i} < α_{} in {alpha:?}", i + 1)));
            }
            let mut a = alpha.to_vec();
            a.swap(i - 1, i);
            Ok((a, t, Some(edge_coefficient(ctx, &xi, i)?)))
        }
        Edge::Jump(i) => {
            if alpha[i - 1] != alpha[i] {
                return Err(Error::EdgePrecondition(format!("jump s_{i} needs α_{i} = α_{} in {alpha:?}", i + 1)));
            }
            let j = rank_perm(alpha).apply(i);
            let basis = ctx.basis();
            if basis.content(j, t) - basis.content(j + 1, t) < 2 {
                return Err(Error::EdgePrecondition(format!("jump s_{i} needs c({j},T) - c({},T) >= 2", j + 1)));
            }
            let t2 = basis.swapped(j, t).expect("gap >= 2");
            Ok((alpha.to_vec(), t2, Some(edge_coefficient(ctx, &xi, i)?)))
        }
    }
}

/// Applies an edge to an already built node.
pub fn apply_edge<S: Scalar>(node: &GraphNode<S>, edge: Edge) -> Result<GraphNode<S>> {
    let ctx = node.zeta.context().clone();
    let (alpha, tableau, b) = edge_target(&ctx, &node.alpha, node.tableau, edge)?;
    let zeta = match (edge, b) {
        (Edge::Affine, _) => {
            let w0inv = Permutation::long_cycle(ctx.n()).inverse();
            node.zeta.act(&w0inv)?.mul_var(ctx.n())
        }
        (Edge::Step(i) | Edge::Jump(i), Some(b)) => {
            let mut z = node.zeta.act_simple(i)?;
            z.add_scaled(&node.zeta, &-b);
            z
        }
        _ => unreachable!(),
    };
    let xi = spectral_vector(&ctx, &alpha, tableau);
    Ok(GraphNode { rank: rank_perm(&alpha), alpha, tableau, xi, zeta: Arc::new(zeta) })
}

impl<S: Scalar> JackEngine<S> {
    pub fn new(ctx: &Arc<KappaContext<S>>) -> Self {
        Self::with_strategy(ctx, Strategy::FirstDescent)
    }

    pub fn with_strategy(ctx: &Arc<KappaContext<S>>, strategy: Strategy) -> Self {
        Self {
            ctx: ctx.clone(),
            strategy,
            memo: Mutex::new(HashMap::new()),
            degrees: Mutex::new(HashMap::new()),
            jump_parent: jump_tree(ctx),
        }
    }

    pub fn context(&self) -> &Arc<KappaContext<S>> {
        &self.ctx
    }

    pub fn spectral_vector(&self, alpha: &[i64], t: usize) -> Vec<S> {
        spectral_vector(&self.ctx, alpha, t)
    }

    pub fn e_eps(&self, alpha: &[i64], t: usize, eps: i64) -> Result<S> {
        e_eps(&self.ctx, alpha, t, eps)
    }

    /// Jumps `[i_1, …]` leading from `(0^N, T_0)` to `(0^N, T_t)`.
    pub fn jump_chain(&self, t: usize) -> Vec<usize> {
        let mut chain = Vec::new();
        let mut cur = t;
        while let Some((prev, i)) = self.jump_parent[cur] {
            chain.push(i);
            cur = prev;
        }
        chain.reverse();
        chain
    }

    fn validate(&self, alpha: &[i64], t: usize) -> Result<()> {
        if alpha.len() != self.ctx.n() {
            return Err(Error::LengthMismatch(alpha.len(), self.ctx.n()));
        }
        if t >= self.ctx.dim() {
            return Err(Error::IndexOutOfRange { index: t, max: self.ctx.dim() - 1 });
        }
        if alpha.iter().any(|&a| a < 0) {
            return Err(Error::NegativeExponent(alpha.to_vec()));
        }
        Ok(())
    }

    /// The node the scheduler builds `(α, T_t)` from, with the connecting edge.
    pub fn predecessor(&self, alpha: &[i64], t: usize) -> Result<Option<(Vec<i64>, usize, Edge)>> {
        self.validate(alpha, t)?;
        let n = alpha.len();
        if alpha.iter().all(|&a| a == 0) {
            return Ok(self.jump_parent[t].map(|(prev, i)| (alpha.to_vec(), prev, Edge::Jump(i))));
        }
        let mut descents = (1..n).filter(|&i| alpha[i - 1] > alpha[i]);
        let descent = match self.strategy {
            Strategy::FirstDescent => descents.next(),
            Strategy::LastDescent => descents.next_back(),
        };
        if let Some(i) = descent {
            let mut a = alpha.to_vec();
            a.swap(i - 1, i);
            return Ok(Some((a, t, Edge::Step(i))));
        }
        let mut a = Vec::with_capacity(n);
        a.push(alpha[n - 1] - 1);
        a.extend_from_slice(&alpha[..n - 1]);
        Ok(Some((a, t, Edge::Affine)))
    }

    /// Rejects κ when two labels of degree `d` share a spectral vector.
    pub fn check_degree(&self, d: i64) -> Result<()> {
        if let Some(r) = self.degrees.lock().unwrap().get(&d) {
            return r.clone();
        }
        let r = self.scan_degree(d);
        self.degrees.lock().unwrap().insert(d, r.clone());
        r
    }

    fn scan_degree(&self, d: i64) -> Result<()> {
        self.ctx.check_poles(d)?;
        let mut all: Vec<(Vec<S>, Vec<i64>, usize)> = Vec::new();
        for a in crate::combinatorics::compositions(self.ctx.n(), d) {
            for t in 0..self.ctx.dim() {
                all.push((self.spectral_vector(&a, t), a.clone(), t));
            }
        }
        all.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
        for w in all.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InadmissibleKappa(format!(
                    "labels ({:?}, T{}) and ({:?}, T{}) share a spectral vector",
                    w[0].1, w[0].2, w[1].1, w[1].2
                )));
            }
        }
        Ok(())
    }

    /// `ζ_{α,T_t}` for `α ∈ N_0^N`.
    pub fn nsjp(&self, alpha: &[i64], t: usize) -> Result<Arc<VvPoly<S>>> {
        self.validate(alpha, t)?;
        self.check_degree(alpha.iter().sum())?;
        let slot = {
            let mut memo = self.memo.lock().unwrap();
            memo.entry((alpha.to_vec(), t)).or_default().clone()
        };
        slot.get_or_init(|| self.build(alpha, t)).clone()
    }

    fn build(&self, alpha: &[i64], t: usize) -> Result<Arc<VvPoly<S>>> {
        let Some((pa, pt, edge)) = self.predecessor(alpha, t)? else {
            return Ok(Arc::new(VvPoly::constant(&self.ctx, t)));
        };
        let zeta = self.nsjp(&pa, pt)?;
        let prev = GraphNode { xi: self.spectral_vector(&pa, pt), rank: rank_perm(&pa), alpha: pa, tableau: pt, zeta };
        let next = apply_edge(&prev, edge)?;
        debug_assert_eq!((next.alpha.as_slice(), next.tableau), (alpha, t));
        Ok(next.zeta)
    }

    pub fn node(&self, alpha: &[i64], t: usize) -> Result<GraphNode<S>> {
        let zeta = self.nsjp(alpha, t)?;
        Ok(GraphNode {
            alpha: alpha.to_vec(),
            tableau: t,
            xi: self.spectral_vector(alpha, t),
            rank: rank_perm(alpha),
            zeta,
        })
    }

    /// `ζ_{α,T}` for `α ∈ Z^N` through `ζ_{α+m1,T} = e_N^m ζ_{α,T}`.
    pub fn nsjp_laurent(&self, alpha: &[i64], t: usize) -> Result<VvPoly<S>> {
        let m = alpha.iter().copied().min().unwrap_or(0).min(0);
        let shifted: Vec<i64> = alpha.iter().map(|a| a - m).collect();
        Ok(self.nsjp(&shifted, t)?.e_n_shift(m))
    }

    /// Number of memoized nodes.
    pub fn memo_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }
}

/// BFS over jumps at `α = 0`: from `T` with `c(i,T) − c(i+1,T) ≥ 2` to `T^{(i)}`.
fn jump_tree<S: Scalar>(ctx: &KappaContext<S>) -> Vec<Option<(usize, usize)>> {
    let basis = ctx.basis();
    let dim = basis.dim();
    let mut parent = vec![None; dim];
    let mut seen = vec![false; dim];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for i in 1..basis.n() {
            if basis.content(i, t) - basis.content(i + 1, t) >= 2 {
                let s = basis.swapped(i, t).expect("gap >= 2");
                if !seen[s] {
                    seen[s] = true;
                    parent[s] = Some((t, i));
                    queue.push_back(s);
                }
            }
        }
    }
    debug_assert!(seen.iter().all(|&s| s), "every tableau is reachable from T_0");
    parent
}

/// Leading coefficient vector `τ(r_α⁻¹) T_t`.
pub fn leading_vector<S: Scalar>(ctx: &KappaContext<S>, alpha: &[i64], t: usize) -> Result<Vec<S>> {
    let mut e = vec![S::zero(); ctx.dim()];
    e[t] = S::one();
    ctx.rep().apply(&rank_perm(alpha).inverse(), &e)
}

/// JSON view of a node.
#[derive(Clone, Debug, Serialize)]
pub struct NodeDump {
    pub alpha: Vec<i64>,
    pub tableau: Vec<Vec<usize>>,
    pub content: Vec<i64>,
    pub spectral_vector: Vec<String>,
    pub rank: Vec<usize>,
    pub polynomial: Vec<JsonTerm>,
}

impl<S: Scalar> GraphNode<S> {
    pub fn dump(&self) -> NodeDump {
        let basis = self.zeta.context().basis().clone();
        let t = basis.tableau(self.tableau);
        NodeDump {
            alpha: self.alpha.clone(),
            tableau: t.rows().to_vec(),
            content: t.content_vector().to_vec(),
            spectral_vector: self.xi.iter().map(|x| x.to_string()).collect(),
            rank: self.rank.one_line(),
            polynomial: self.zeta.to_json_terms(),
        }
    }
}
