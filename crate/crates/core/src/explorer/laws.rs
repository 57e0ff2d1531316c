//! The law catalog. Each law is a predicate on a tuple of universe
//! indices; hypotheses that do not apply make the tuple vacuous.
//!
//! Several laws come in pairs: the statement as the theory asserts it, and
//! a variant with the extra hypothesis the statement turns out to need.
//! The former is expected to hold and is reported as a counterexample when
//! it does not; see the README for which ones that is.

use std::ops::ControlFlow;

use crate::algebra::{
    divide, is_prime, is_prime_on, is_unit, oplus, otimes, otimes_with_order, plus, product_counts,
    scalar_multiple, scalar_multiple_left, sum_counts, times, ProductResult, Side,
};
use crate::canon::{canonical_key, CanonicalKey};
use crate::decomposition::{
    decomposition_edge_sets, is_oplus_irreducible, is_s_standard, is_splitting_vertex, is_t_standard,
    nested_decomposition, rank, splitting_edges, splitting_vertices, st_core, IrreducibilityMode,
};
use crate::embed::{iso_from_edge_map, isomorphic, visit_anchored_embeddings, Anchors};
use crate::error::{Error, Result};
use crate::graph::{components, EdgeId, FlowGraph};
use crate::limits::Limits;
use crate::named::{cycle, nat};
use crate::order::{
    strong_leq_with, strong_witness_from_edge_images, weak_leq_with, weak_witness_from_edge_images, WeakWitness,
};
use crate::st::is_st_flow_graph;

use super::enumerate::{level, UniverseSpec};
use super::run::{Check, Ctx};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// No tuple in the universe may violate the law.
    Holds,
    /// Some tuple violates it; the search has to find one.
    Fails,
}

/// Where a law's tuples come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Universe,
    /// The chains F₀ … F_n.
    Chains(usize),
}

type Eval = fn(&Ctx, &[usize]) -> Result<Check>;

pub struct Law {
    pub id: &'static str,
    pub statement: &'static str,
    pub arity: usize,
    pub expectation: Expectation,
    /// Restrict the universe to st-flow graphs.
    pub st_only: bool,
    /// Default edge bound.
    pub max_edges: usize,
    pub source: Source,
    /// A specific violating tuple that has to be confirmed.
    pub named: Option<fn() -> Vec<FlowGraph>>,
    /// For (A, B, C) laws of the form f(A, B) ≅ f(A, C) ⇒ B ≅ C: the map
    /// f, which lets the search hash pairs instead of scanning triples.
    pub collide: Option<fn(&FlowGraph, &FlowGraph) -> FlowGraph>,
    eval: Eval,
}

impl Law {
    pub fn eval(&self, ctx: &Ctx, t: &[usize]) -> Result<Check> {
        (self.eval)(ctx, t)
    }

    /// Default universe, with the edge bound capped at `cap` if given.
    pub fn universe(&self, cap: Option<usize>) -> UniverseSpec {
        let e = cap.map_or(self.max_edges, |c| c.min(self.max_edges));
        let mut u = UniverseSpec::new(e);
        u.st_only = self.st_only;
        u
    }
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Law").field("id", &self.id).field("arity", &self.arity).finish()
    }
}

const TRIPLES: usize = 3;
const PAIRS: usize = 4;
const SINGLES: usize = 5;
const SEARCH: usize = 5;

const fn law(id: &'static str, statement: &'static str, arity: usize, max_edges: usize, eval: Eval) -> Law {
    Law {
        id,
        statement,
        arity,
        expectation: Expectation::Holds,
        st_only: false,
        max_edges,
        source: Source::Universe,
        named: None,
        collide: None,
        eval,
    }
}

const fn fails(mut l: Law) -> Law {
    l.expectation = Expectation::Fails;
    l
}

const fn st(mut l: Law) -> Law {
    l.st_only = true;
    l
}

const fn named(mut l: Law, f: fn() -> Vec<FlowGraph>) -> Law {
    l.named = Some(f);
    l
}

const fn collide(mut l: Law, f: fn(&FlowGraph, &FlowGraph) -> FlowGraph) -> Law {
    l.collide = Some(f);
    l
}

const fn chains(mut l: Law, n: usize) -> Law {
    l.source = Source::Chains(n);
    l.max_edges = n;
    l
}

static CATALOG: &[Law] = &[
    // ---- addition and multiplication
    law("oplus_assoc", "(A⊕B)⊕C ≅ A⊕(B⊕C)", 3, TRIPLES, oplus_assoc),
    named(fails(law("oplus_comm", "A⊕B ≅ B⊕A", 2, PAIRS, oplus_comm)), cycle3_f2),
    law("oplus_identity", "A⊕G ≅ A ⇔ G ≅ F₀ ⇔ G⊕A ≅ A", 2, PAIRS, oplus_identity),
    law("oplus_count_formulas", "A⊕B has p_A+p_B−1 vertices and q_A+q_B edges", 2, PAIRS, oplus_counts),
    law("otimes_assoc", "(A⊗B)⊗C ≅ A⊗(B⊗C)", 3, TRIPLES, otimes_assoc),
    named(fails(law("otimes_comm", "A⊗B ≅ B⊗A", 2, PAIRS, otimes_comm)), cycle3_f2),
    law(
        "otimes_identity",
        "A nontrivial, not infinitesimal: A⊗G ≅ A ⇔ G ≅ F₁ ⇔ G⊗A ≅ A",
        2,
        PAIRS,
        otimes_identity,
    ),
    law(
        "otimes_identity_units",
        "A nontrivial, not infinitesimal: A⊗G ≅ A or G⊗A ≅ A implies G ∈ {F₁, rev}; G ≅ F₁ implies both",
        2,
        PAIRS,
        otimes_identity_units,
    ),
    named(
        fails(law("otimes_identity_exception", "A nontrivial: A⊗G ≅ A implies G ∈ {F₁, rev}", 2, PAIRS, otimes_identity_exception)),
        c1_c1,
    ),
    law(
        "otimes_identity_exception_family",
        "A nontrivial, A⊗G ≅ A, G not a unit: G is a one-edge infinitesimal and A ≅ q_A·G",
        2,
        PAIRS,
        otimes_identity_family,
    ),
    law("otimes_zero", "G⊗H trivial ⇔ G or H trivial", 2, PAIRS, otimes_zero),
    law("otimes_count_formulas", "A⊗B has q_A·q_B edges and the stated vertex count", 2, PAIRS, otimes_counts),
    law("eta_independence", "A⊗B does not depend on the edge enumeration of A", 2, PAIRS, eta_independence),
    law("right_distrib", "(A⊕B)⊗C ≅ (A⊗C)⊕(B⊗C)", 3, TRIPLES, right_distrib),
    named(fails(law("left_distrib", "A⊗(B⊕C) ≅ (A⊗B)⊕(A⊗C)", 3, TRIPLES, left_distrib)), cycle3_f1_f1),
    law(
        "right_div_distrib",
        "A/B, C/B exist: (A⊕C)/B exists and (A/B)⊕(C/B) is one",
        3,
        TRIPLES,
        right_div_distrib,
    ),
    named(
        fails(law("left_div_distrib", "A\\B, C\\B exist: B⊗((A\\B)⊕(C\\B)) ≅ A⊕C", 3, TRIPLES, left_div_distrib)),
        left_div_instance,
    ),
    law(
        "div_chain_rules",
        "A/B, B/C exist: A/C exists and (A/B)⊗(B/C) is one; likewise C⊗((B\\C)⊗(A\\B)) ≅ A",
        3,
        TRIPLES,
        div_chain_rules,
    ),
    law("scalar_comm_reduction", "kA ≅ A⊕…⊕A folded from either side, k = 1…4", 1, SINGLES, scalar_comm),
    law(
        "infinitesimal_product_law",
        "G, H nontrivial: G⊗H infinitesimal ⇔ G or H infinitesimal",
        2,
        PAIRS,
        infinitesimal_product,
    ),
    chains(
        law("nat_submodel", "F_m⊕F_n ≅ F_{m+n}, F_m⊗F_n ≅ F_{mn}, both orders agree with m ≤ n", 2, 8, nat_submodel),
        8,
    ),
    chains(law("prime_nat_agreement", "F_n prime ⇔ n prime", 1, 8, prime_nat), 8),
    law("left_right_prime_agree", "A right-prime ⇔ A left-prime", 1, PAIRS, left_right_prime),
    // ---- decomposition
    law("st_closure", "A, B st ⇒ A⊕B st", 2, PAIRS, st_closure),
    law("st_closure_reverse", "A⊕B st ⇒ A, B st", 2, PAIRS, st_closure_reverse),
    law("core_distributes", "core(A⊕B) ≅ core(A)⊕core(B)", 2, PAIRS, core_distributes),
    law(
        "crossing_summands",
        "C st, A nontrivial and not infinitesimal, α: C ↪ A⊕B source-anchored leaving A: α⁻¹(t_A) ∈ χ(C)",
        3,
        TRIPLES,
        crossing_summands,
    ),
    fails(law(
        "crossing_summands_general",
        "as crossing_summands with C arbitrary",
        3,
        SEARCH,
        crossing_summands_general,
    )),
    st(law(
        "componentwise_iso",
        "A ≅ B ⇔ ⟨A⟩, ⟨B⟩ have equal length and isomorphic terms",
        2,
        PAIRS,
        componentwise_iso,
    )),
    law("decomp_recompose", "⊕ of ⟨A⟩ is A and every term is irreducible", 1, SINGLES, decomp_recompose),
    law("decomp_nested_agree", "sorted-cut ⟨A⟩ agrees with the nested splitting recursion", 1, SINGLES, decomp_nested),
    law(
        "decomp_for_sums",
        "A nontrivial, not infinitesimal; B nontrivial, s-standard: ⟨A⊕B⟩ = ⟨A⟩⟨B⟩",
        2,
        PAIRS,
        decomp_for_sums,
    ),
    fails(law("decomp_for_sums_general", "as decomp_for_sums with B arbitrary", 2, SEARCH, decomp_for_sums_general)),
    law("rank_total", "r_s(w)+r_t(w)+1 = |χ(A)|", 1, SINGLES, rank_total),
    law("rank_unique", "r_s is a bijection χ(A) → {0…|χ(A)|−1}", 1, SINGLES, rank_unique),
    law("rank_monotone", "u on the s-side of w: r_s(u) < r_s(w), r_t(u) > r_t(w); mirrored on the t-side", 1, SINGLES, rank_monotone),
    law("split_edge_to_F1", "e ∈ Δ(A): the term of ⟨A⟩ holding e is F₁", 1, SINGLES, split_edge_to_f1),
    law(
        "split_edge_to_F1_standard",
        "every term of ⟨A⟩ s- and t-standard, e ∈ Δ(A): the term of ⟨A⟩ holding e is the single edge e",
        1,
        SINGLES,
        split_edge_standard,
    ),
    law(
        "prod_decomp_length",
        "B nontrivial, not infinitesimal: |χ(A⊗B)| = |χ(A)| + |Δ(A)|·|χ(B)|",
        2,
        PAIRS,
        prod_decomp_length,
    ),
    fails(law("prod_decomp_length_degenerate", "|χ(A⊗B)| = |χ(A)| + |Δ(A)|·|χ(B)| for all B", 2, SEARCH, prod_decomp_length_all)),
    law(
        "prod_decomp_structure",
        "B nontrivial, not infinitesimal, all terms of ⟨A⟩ and ⟨B⟩ s- and t-standard: ⟨A⊗B⟩ replaces each unit term U of ⟨A⟩ by ⟨U⊗B⟩ and each other term T by T⊗B",
        2,
        PAIRS,
        prod_decomp_structure,
    ),
    law("prod_irreducibility", "A ≇ F₁ irreducible ⇒ A⊗B irreducible", 2, PAIRS, prod_irreducibility),
    law(
        "prod_irreducibility_standard",
        "A s- and t-standard, irreducible, not a unit ⇒ A⊗B irreducible",
        2,
        PAIRS,
        prod_irreducibility_standard,
    ),
    collide(st(law("cancel_left", "A⊕B ≅ A⊕C ⇒ B ≅ C", 3, TRIPLES, cancel_left)), sum_after),
    collide(st(law("cancel_right", "B⊕A ≅ C⊕A ⇒ B ≅ C", 3, TRIPLES, cancel_right)), sum_before),
    collide(
        fails(law("cancel_left_general", "A⊕B ≅ A⊕C ⇒ B ≅ C, any flow graphs", 3, SEARCH, cancel_left)),
        sum_after,
    ),
    collide(
        fails(law("cancel_right_general", "B⊕A ≅ C⊕A ⇒ B ≅ C, any flow graphs", 3, SEARCH, cancel_right)),
        sum_before,
    ),
    st(law("comm_condition", "A⊕B ≅ B⊕A ⇔ A ≅ k₁C, B ≅ k₂C for some C, k₁, k₂ ≥ 0", 2, PAIRS, comm_condition)),
    fails(law("comm_condition_general", "as comm_condition, any flow graphs", 2, SEARCH, comm_condition)),
    law(
        "irreducibility_equiv",
        "A s- and t-standard: reducible ⇔ A has a splitting vertex",
        1,
        SINGLES,
        irreducibility_equiv,
    ),
    fails(law(
        "irreducibility_equiv_general",
        "A not infinitesimal: reducible ⇔ A has a splitting vertex",
        1,
        SEARCH,
        irreducibility_equiv_general,
    )),
    st(law("cut_is_splitting", "every cut vertex other than s, t is a splitting vertex", 1, SINGLES, cut_is_splitting)),
    fails(law("cut_is_splitting_general", "as cut_is_splitting, any flow graph", 1, SEARCH, cut_is_splitting)),
    // ---- orders
    law("strong_implies_weak", "A ≼ B ⇒ A ≤ B", 2, PAIRS, strong_implies_weak),
    fails(law("weak_not_strong", "A ≤ B ⇒ A ≼ B", 2, SEARCH, weak_implies_strong)),
    law("strong_transitive", "A ≼ B ≼ C ⇒ A ≼ C", 3, TRIPLES, strong_transitive),
    named(fails(law("strong_antisym", "A ≼ B ≼ A ⇒ A ≅ B", 2, PAIRS, strong_antisym)), four_cycles),
    named(fails(law("weak_antisym", "A ≤ B ≤ A ⇒ A ≅ B", 2, PAIRS, weak_antisym)), four_cycles),
    fails(law("weak_transitive", "A ≤ B ≤ C ⇒ A ≤ C", 3, PAIRS, weak_transitive)),
    law("strong_preserve_right_mul", "A ≼ B ⇒ A⊗C ≼ B⊗C", 3, TRIPLES, strong_preserve_right_mul),
    st(fails(law("strong_violation_plus", "A ≼ B ⇒ A⊕C ≼ B⊕C, st-flow graphs", 3, SEARCH, strong_plus_right))),
    st(fails(law("strong_violation_plus_left", "A ≼ B ⇒ C⊕A ≼ C⊕B, st-flow graphs", 3, SEARCH, strong_plus_left))),
    st(fails(law("strong_violation_left_mul", "A ≼ B ⇒ C⊗A ≼ C⊗B, st-flow graphs", 3, SEARCH, strong_left_mul))),
    law("weak_preserve_all", "A ≤ B ⇒ A⊕C ≤ B⊕C, C⊕A ≤ C⊕B, A⊗C ≤ B⊗C", 3, TRIPLES, weak_preserve_all),
    fails(law("weak_violation_left_mul", "A ≤ B ⇒ C⊗A ≤ C⊗B", 3, SEARCH, weak_left_mul)),
];

pub fn catalog() -> &'static [Law] {
    CATALOG
}

pub fn find_law(id: &str) -> Option<&'static Law> {
    CATALOG.iter().find(|l| l.id == id)
}

// ---- named instances

fn cycle3() -> FlowGraph {
    cycle(3, 0, 1)
}

fn cycle3_f2() -> Vec<FlowGraph> {
    vec![cycle3(), nat(2)]
}

fn cycle3_f1_f1() -> Vec<FlowGraph> {
    vec![cycle3(), nat(1), nat(1)]
}

fn c1_c1() -> Vec<FlowGraph> {
    vec![FlowGraph::unit_loop(), FlowGraph::unit_loop()]
}

fn left_div_instance() -> Vec<FlowGraph> {
    vec![times(&cycle3(), &nat(2)), cycle3(), cycle3()]
}

fn four_cycles() -> Vec<FlowGraph> {
    vec![cycle(4, 0, 2), cycle(4, 0, 1)]
}

// ---- helpers

fn holds(ok: bool) -> Result<Check> {
    Ok(Check::holds(ok))
}

fn vacuous() -> Result<Check> {
    Ok(Check::Vacuous)
}

fn proper(a: &FlowGraph) -> bool {
    !a.is_trivial() && !a.is_infinitesimal()
}

/// `inv[e * q_B + g]` = the product edge substituted from (e, g).
fn inverse(p: &ProductResult, qb: usize) -> Vec<EdgeId> {
    let mut inv = vec![0; p.edge_bijection.len()];
    for (f, &(e, g)) in p.edge_bijection.iter().enumerate() {
        inv[e * qb + g] = f;
    }
    inv
}

/// Isomorphic, trying the expected edge correspondence first.
fn iso_via(a: &FlowGraph, b: &FlowGraph, map: &[EdgeId]) -> bool {
    iso_from_edge_map(a, b, map).is_some() || isomorphic(a, b)
}

fn chi(a: &FlowGraph) -> usize {
    splitting_vertices(a).len()
}

fn same_terms(x: &[FlowGraph], y: &[FlowGraph]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| isomorphic(a, b))
}

/// Whether the order deciders accept `g`.
fn order_fits(limits: &Limits, g: &FlowGraph) -> bool {
    g.vertex_count() <= limits.max_order_vertices && g.edge_count() <= limits.max_order_edges
}

/// Keys of every C with A ≅ k·C, k ≥ 1.
pub(crate) fn roots_of(a: &FlowGraph) -> Result<Vec<CanonicalKey>> {
    let q = a.edge_count();
    let mut keys = vec![canonical_key(a)?];
    for d in 1..q {
        if !q.is_multiple_of(d) {
            continue;
        }
        let k = q / d;
        for c in &level(d)?.graphs {
            if k * (c.vertex_count() - 1) + 1 == a.vertex_count() && isomorphic(&scalar_multiple(k, c)?, a) {
                keys.push(canonical_key(c)?);
            }
        }
    }
    keys.sort();
    keys.dedup();
    Ok(keys)
}

fn is_cut_vertex(a: &FlowGraph, w: usize) -> bool {
    let comp = components(a.vertex_count(), a.edges(), Some(w), None);
    comp.iter().flatten().any(|&c| c > 0)
}

// ---- addition and multiplication

fn oplus_assoc(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    let l = plus(&plus(a, b), d);
    let r = plus(a, &plus(b, d));
    let id: Vec<EdgeId> = (0..l.edge_count()).collect();
    holds(iso_via(&l, &r, &id))
}

fn oplus_comm(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    holds(isomorphic(&plus(a, b), &plus(b, a)))
}

fn oplus_identity(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, g) = (c.g(t[0]), c.g(t[1]));
    let l = isomorphic(&plus(a, g), a);
    let r = isomorphic(&plus(g, a), a);
    holds(l == g.is_trivial() && r == g.is_trivial())
}

fn oplus_counts(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    let s = oplus(a, b);
    let want = (a.vertex_count() + b.vertex_count() - 1, a.edge_count() + b.edge_count());
    let ok = (s.sum.vertex_count(), s.sum.edge_count()) == want
        && sum_counts(a, b) == want
        && s.left_map.vertex(a.target()) == s.right_map.vertex(b.source())
        && s.sum.source() == s.left_map.vertex(a.source())
        && s.sum.target() == s.right_map.vertex(b.target());
    holds(ok)
}

fn otimes_assoc(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    let (qb, qd) = (b.edge_count(), d.edge_count());
    let ab = otimes(a, b);
    let l = otimes(&ab.product, d);
    let bd = otimes(b, d);
    let r = otimes(a, &bd.product);
    let inv_bd = inverse(&bd, qd);
    let inv_r = inverse(&r, qb * qd);
    let map: Vec<EdgeId> = l
        .edge_bijection
        .iter()
        .map(|&(x, g)| {
            let (ea, eb) = ab.edge_bijection[x];
            inv_r[ea * qb * qd + inv_bd[eb * qd + g]]
        })
        .collect();
    holds(iso_via(&l.product, &r.product, &map))
}

fn otimes_comm(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    holds(isomorphic(&times(a, b), &times(b, a)))
}

/// (A⊗G ≅ A, G⊗A ≅ A); only one-edge G can qualify.
fn fixes(a: &FlowGraph, g: &FlowGraph) -> (bool, bool) {
    if g.edge_count() != 1 {
        return (false, false);
    }
    (isomorphic(&times(a, g), a), isomorphic(&times(g, a), a))
}

fn otimes_identity(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, g) = (c.g(t[0]), c.g(t[1]));
    if !proper(a) {
        return vacuous();
    }
    let (l, r) = fixes(a, g);
    let m = isomorphic(g, &nat(1));
    holds(l == m && r == m)
}

fn otimes_identity_units(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, g) = (c.g(t[0]), c.g(t[1]));
    if !proper(a) {
        return vacuous();
    }
    let (l, r) = fixes(a, g);
    let one = isomorphic(g, &nat(1));
    holds((!(l || r) || is_unit(g)) && (!one || (l && r)))
}

fn otimes_identity_exception(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, g) = (c.g(t[0]), c.g(t[1]));
    if a.is_trivial() {
        return vacuous();
    }
    let (l, _) = fixes(a, g);
    holds(!l || is_unit(g))
}

fn otimes_identity_family(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, g) = (c.g(t[0]), c.g(t[1]));
    if a.is_trivial() || is_unit(g) || !fixes(a, g).0 {
        return vacuous();
    }
    holds(g.edge_count() == 1 && g.is_infinitesimal() && isomorphic(a, &scalar_multiple(a.edge_count(), g)?))
}

fn otimes_zero(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (g, h) = (c.g(t[0]), c.g(t[1]));
    let zero = g.is_trivial() || h.is_trivial();
    holds(times(g, h).is_trivial() == zero && times(h, g).is_trivial() == zero)
}

fn otimes_counts(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    let p = otimes(a, b);
    let (pa, qa, pb, qb) = (a.vertex_count(), a.edge_count(), b.vertex_count(), b.edge_count());
    let vertices = if b.is_trivial() || b.is_infinitesimal() {
        1 + qa * (pb - 1)
    } else {
        pa + qa * (pb - 2)
    };
    let want = (vertices, qa * qb);
    let mut pairs = p.edge_bijection.clone();
    pairs.sort_unstable();
    pairs.dedup();
    let bijective = pairs.len() == qa * qb && pairs.iter().all(|&(e, g)| e < qa && g < qb);
    holds((p.product.vertex_count(), p.product.edge_count()) == want && product_counts(a, b) == want && bijective)
}

fn eta_independence(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    let q = a.edge_count();
    let qb = b.edge_count();
    let base = otimes(a, b);
    let inv = inverse(&base, qb);
    let reversed: Vec<EdgeId> = (0..q).rev().collect();
    let rotated: Vec<EdgeId> = (0..q).map(|i| (i + 1) % q.max(1)).collect();
    for eta in [reversed, rotated] {
        let p = otimes_with_order(a, b, &eta)?;
        let map: Vec<EdgeId> = p.edge_bijection.iter().map(|&(e, g)| inv[e * qb + g]).collect();
        if !iso_via(&p.product, &base.product, &map) {
            return holds(false);
        }
    }
    holds(true)
}

fn right_distrib(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    let (qa, qd) = (a.edge_count(), d.edge_count());
    let l = otimes(&plus(a, b), d);
    let ad = otimes(a, d);
    let bd = otimes(b, d);
    let r = plus(&ad.product, &bd.product);
    let (inv_a, inv_b) = (inverse(&ad, qd), inverse(&bd, qd));
    let map: Vec<EdgeId> = l
        .edge_bijection
        .iter()
        .map(|&(e, g)| if e < qa { inv_a[e * qd + g] } else { qa * qd + inv_b[(e - qa) * qd + g] })
        .collect();
    holds(iso_via(&l.product, &r, &map))
}

fn left_distrib(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    holds(isomorphic(&times(a, &plus(b, d)), &plus(&times(a, b), &times(a, d))))
}

/// Quotient of graphs outside the universe; 0/0 counts as no quotient.
fn quotient(a: &FlowGraph, b: &FlowGraph, side: Side, limits: &Limits) -> Result<Option<FlowGraph>> {
    match divide(a, b, side, limits) {
        Err(Error::Domain(_)) => Ok(None),
        r => r,
    }
}

fn right_div_distrib(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (ia, ib, ic) = (t[0], t[1], t[2]);
    let (Some(x), Some(y)) = (c.quotient(ia, ib, Side::Right)?, c.quotient(ic, ib, Side::Right)?) else {
        return vacuous();
    };
    let (a, b, d) = (c.g(ia), c.g(ib), c.g(ic));
    let sum = plus(a, d);
    let exists = quotient(&sum, b, Side::Right, &c.limits)?.is_some();
    holds(exists && isomorphic(&times(&plus(&x, &y), b), &sum))
}

fn left_div_distrib(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (ia, ib, ic) = (t[0], t[1], t[2]);
    let (Some(x), Some(y)) = (c.quotient(ia, ib, Side::Left)?, c.quotient(ic, ib, Side::Left)?) else {
        return vacuous();
    };
    holds(isomorphic(&times(c.g(ib), &plus(&x, &y)), &plus(c.g(ia), c.g(ic))))
}

fn div_chain_rules(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (ia, ib, ic) = (t[0], t[1], t[2]);
    let (a, cc) = (c.g(ia), c.g(ic));
    let mut any = false;
    if let (Some(ab), Some(bc)) = (c.quotient(ia, ib, Side::Right)?, c.quotient(ib, ic, Side::Right)?) {
        any = true;
        let exists = c.quotient(ia, ic, Side::Right)?.is_some();
        if !exists || !isomorphic(&times(&times(&ab, &bc), cc), a) {
            return holds(false);
        }
    }
    if let (Some(ab), Some(bc)) = (c.quotient(ia, ib, Side::Left)?, c.quotient(ib, ic, Side::Left)?) {
        any = true;
        let exists = c.quotient(ia, ic, Side::Left)?.is_some();
        if !exists || !isomorphic(&times(cc, &times(&bc, &ab)), a) {
            return holds(false);
        }
    }
    if any {
        holds(true)
    } else {
        vacuous()
    }
}

fn scalar_comm(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    for k in 1..=4 {
        if !isomorphic(&scalar_multiple(k, a)?, &scalar_multiple_left(k, a)?) {
            return holds(false);
        }
    }
    holds(true)
}

fn infinitesimal_product(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (g, h) = (c.g(t[0]), c.g(t[1]));
    if g.is_trivial() || h.is_trivial() {
        return vacuous();
    }
    let inf = g.is_infinitesimal() || h.is_infinitesimal();
    holds(times(g, h).is_infinitesimal() == inf && times(h, g).is_infinitesimal() == inf)
}

fn nat_submodel(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    let (m, n) = (a.edge_count(), b.edge_count());
    if !isomorphic(a, &nat(m)) || !isomorphic(b, &nat(n)) {
        return vacuous();
    }
    let ok = isomorphic(&plus(a, b), &nat(m + n))
        && isomorphic(&times(a, b), &nat(m * n))
        && c.weak_holds(t[0], t[1])? == (m <= n)
        && c.strong_holds(t[0], t[1])? == (m <= n);
    holds(ok)
}

fn prime_number(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_nat(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    let n = a.edge_count();
    if !isomorphic(a, &nat(n)) {
        return vacuous();
    }
    holds(is_prime(a)? == prime_number(n))
}

fn left_right_prime(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    holds(is_prime_on(a, Side::Right, &c.limits)? == is_prime_on(a, Side::Left, &c.limits)?)
}

// ---- decomposition

fn st_closure(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.is_st(t[0])? || !c.is_st(t[1])? {
        return vacuous();
    }
    holds(is_st_flow_graph(&plus(c.g(t[0]), c.g(t[1])))?)
}

fn st_closure_reverse(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !is_st_flow_graph(&plus(c.g(t[0]), c.g(t[1])))? {
        return vacuous();
    }
    holds(c.is_st(t[0])? && c.is_st(t[1])?)
}

fn core_distributes(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    let whole = st_core(&plus(a, b))?;
    holds(isomorphic(&whole, &plus(&st_core(a)?, &st_core(b)?)))
}

/// Some source-anchored α: C ↪ A⊕B using an edge of B whose preimage of
/// the glue vertex is missing or not a splitting vertex of C.
fn crossing_violation(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b, cc) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    if !proper(a) || b.is_trivial() || cc.is_trivial() {
        return vacuous();
    }
    let s = oplus(a, b);
    let w = s.left_map.vertex(a.target());
    let qa = a.edge_count();
    let mut crossing = false;
    let mut bad = false;
    let _ = visit_anchored_embeddings(cc, &s.sum, Anchors::SOURCE, &c.limits, |m| {
        if m.edges.iter().all(|&e| e < qa) {
            return ControlFlow::Continue(());
        }
        crossing = true;
        match m.vertices.iter().position(|&v| v == w) {
            Some(u) if is_splitting_vertex(cc, u) => ControlFlow::Continue(()),
            _ => {
                bad = true;
                ControlFlow::Break(())
            }
        }
    })?;
    if !crossing {
        return vacuous();
    }
    holds(!bad)
}

fn crossing_summands(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.is_st(t[2])? {
        return vacuous();
    }
    crossing_violation(c, t)
}

fn crossing_summands_general(c: &Ctx, t: &[usize]) -> Result<Check> {
    crossing_violation(c, t)
}

fn componentwise_iso(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    let (da, db) = (c.decomposition(t[0]), c.decomposition(t[1]));
    holds(isomorphic(a, b) == same_terms(&da.components, &db.components))
}

fn decomp_recompose(c: &Ctx, t: &[usize]) -> Result<Check> {
    let d = c.decomposition(t[0]);
    holds(isomorphic(&d.recompose(), c.g(t[0])) && d.components.iter().all(|x| chi(x) == 0))
}

fn decomp_nested(c: &Ctx, t: &[usize]) -> Result<Check> {
    let nested = nested_decomposition(c.g(t[0]))?;
    holds(same_terms(&c.decomposition(t[0]).components, &nested.components))
}

fn sum_decomposes(c: &Ctx, t: &[usize]) -> bool {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    let whole = crate::decomposition::canonical_decomposition(&plus(a, b));
    let mut parts = c.decomposition(t[0]).components.clone();
    parts.extend(c.decomposition(t[1]).components.iter().cloned());
    same_terms(&whole.components, &parts)
}

fn decomp_for_sums(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    if !proper(a) || b.is_trivial() || !is_s_standard(b) {
        return vacuous();
    }
    holds(sum_decomposes(c, t))
}

fn decomp_for_sums_general(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    if !proper(a) || b.is_trivial() {
        return vacuous();
    }
    holds(sum_decomposes(c, t))
}

fn rank_total(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    let chi = splitting_vertices(a).vertices();
    if chi.is_empty() {
        return vacuous();
    }
    for &w in &chi {
        let r = rank(a, w)?;
        if r.r_s + r.r_t + 1 != chi.len() {
            return holds(false);
        }
    }
    holds(true)
}

fn rank_unique(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    let chi = splitting_vertices(a).vertices();
    if chi.is_empty() {
        return vacuous();
    }
    let mut rs = chi.iter().map(|&w| Ok(rank(a, w)?.r_s)).collect::<Result<Vec<_>>>()?;
    rs.sort_unstable();
    holds(rs.iter().enumerate().all(|(i, &r)| i == r))
}

fn rank_monotone(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    let chi = splitting_vertices(a).vertices();
    if chi.len() < 2 {
        return vacuous();
    }
    let ranks = chi.iter().map(|&w| rank(a, w)).collect::<Result<Vec<_>>>()?;
    for (i, &w) in chi.iter().enumerate() {
        let comp = components(a.vertex_count(), a.edges(), Some(w), None);
        for (j, &u) in chi.iter().enumerate() {
            if i == j {
                continue;
            }
            let (rw, ru) = (ranks[i], ranks[j]);
            let ok = if comp[u] == comp[a.source()] {
                ru.r_s < rw.r_s && ru.r_t > rw.r_t
            } else if comp[u] == comp[a.target()] {
                ru.r_s > rw.r_s && ru.r_t < rw.r_t
            } else {
                false
            };
            if !ok {
                return holds(false);
            }
        }
    }
    holds(true)
}

/// For each splitting edge, the term of ⟨A⟩ that holds it.
fn terms_of_splitting_edges(c: &Ctx, i: usize) -> Vec<(Vec<EdgeId>, FlowGraph)> {
    let a = c.g(i);
    let sets = decomposition_edge_sets(a);
    let terms = &c.decomposition(i).components;
    splitting_edges(a)
        .into_iter()
        .map(|e| {
            let k = sets.iter().position(|s| s.contains(&e)).expect("edge sets cover A");
            (sets[k].clone(), terms[k].clone())
        })
        .collect()
}

fn split_edge_to_f1(c: &Ctx, t: &[usize]) -> Result<Check> {
    let terms = terms_of_splitting_edges(c, t[0]);
    if terms.is_empty() {
        return vacuous();
    }
    holds(terms.iter().all(|(set, term)| set.len() == 1 && isomorphic(term, &nat(1))))
}

/// Terms like C₁⊕F₁ are irreducible (no splitting vertex) yet not
/// s-standard; the lemmas about terms of ⟨A⟩ need them excluded.
fn terms_standard(c: &Ctx, i: usize) -> bool {
    c.decomposition(i).components.iter().all(|t| is_s_standard(t) && is_t_standard(t))
}

fn split_edge_standard(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !terms_standard(c, t[0]) {
        return vacuous();
    }
    let terms = terms_of_splitting_edges(c, t[0]);
    if terms.is_empty() {
        return vacuous();
    }
    holds(terms.iter().all(|(set, term)| set.len() == 1 && is_unit(term)))
}

fn length_formula(c: &Ctx, t: &[usize]) -> bool {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    let (ca, cb) = (c.decomposition(t[0]).len() - 1, c.decomposition(t[1]).len() - 1);
    chi(&times(a, b)) == ca + splitting_edges(a).len() * cb
}

fn prod_decomp_length(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !proper(c.g(t[1])) {
        return vacuous();
    }
    holds(length_formula(c, t))
}

fn prod_decomp_length_all(c: &Ctx, t: &[usize]) -> Result<Check> {
    holds(length_formula(c, t))
}

fn prod_decomp_structure(c: &Ctx, t: &[usize]) -> Result<Check> {
    let b = c.g(t[1]);
    if !proper(b) || !terms_standard(c, t[0]) || !terms_standard(c, t[1]) {
        return vacuous();
    }
    let mut want = Vec::new();
    for term in &c.decomposition(t[0]).components {
        if is_unit(term) {
            want.extend(crate::decomposition::canonical_decomposition(&times(term, b)).components);
        } else {
            want.push(times(term, b));
        }
    }
    let got = crate::decomposition::canonical_decomposition(&times(c.g(t[0]), b));
    holds(same_terms(&got.components, &want))
}

fn prod_irreducibility(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    if isomorphic(a, &nat(1)) || chi(a) != 0 {
        return vacuous();
    }
    holds(chi(&times(a, c.g(t[1]))) == 0)
}

fn prod_irreducibility_standard(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    if is_unit(a) || chi(a) != 0 || !is_s_standard(a) || !is_t_standard(a) {
        return vacuous();
    }
    holds(chi(&times(a, c.g(t[1]))) == 0)
}

fn sum_after(a: &FlowGraph, b: &FlowGraph) -> FlowGraph {
    plus(a, b)
}

fn sum_before(a: &FlowGraph, b: &FlowGraph) -> FlowGraph {
    plus(b, a)
}

fn cancel_left(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    if b.edge_count() != d.edge_count() || b.vertex_count() != d.vertex_count() || !isomorphic(&plus(a, b), &plus(a, d)) {
        return vacuous();
    }
    holds(isomorphic(b, d))
}

fn cancel_right(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    if b.edge_count() != d.edge_count() || b.vertex_count() != d.vertex_count() || !isomorphic(&plus(b, a), &plus(d, a)) {
        return vacuous();
    }
    holds(isomorphic(b, d))
}

fn comm_condition(c: &Ctx, t: &[usize]) -> Result<Check> {
    let (a, b) = (c.g(t[0]), c.g(t[1]));
    let commute = isomorphic(&plus(a, b), &plus(b, a));
    let common = if a.is_trivial() || b.is_trivial() {
        true
    } else {
        let (ra, rb) = (c.roots(t[0])?, c.roots(t[1])?);
        ra.iter().any(|k| rb.binary_search(k).is_ok())
    };
    holds(commute == common)
}

fn irreducibility_equiv(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    if !is_s_standard(a) || !is_t_standard(a) {
        return vacuous();
    }
    holds(
        is_oplus_irreducible(a, IrreducibilityMode::SplittingVertex)?
            == is_oplus_irreducible(a, IrreducibilityMode::Definitional)?,
    )
}

fn irreducibility_equiv_general(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    if a.is_infinitesimal() {
        return vacuous();
    }
    holds(
        is_oplus_irreducible(a, IrreducibilityMode::SplittingVertex)?
            == is_oplus_irreducible(a, IrreducibilityMode::Definitional)?,
    )
}

fn cut_is_splitting(c: &Ctx, t: &[usize]) -> Result<Check> {
    let a = c.g(t[0]);
    let cuts: Vec<usize> = (0..a.vertex_count())
        .filter(|&w| w != a.source() && w != a.target() && is_cut_vertex(a, w))
        .collect();
    if cuts.is_empty() {
        return vacuous();
    }
    holds(cuts.iter().all(|&w| is_splitting_vertex(a, w)))
}

// ---- orders

fn strong_implies_weak(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.strong_holds(t[0], t[1])? {
        return vacuous();
    }
    holds(c.weak_holds(t[0], t[1])?)
}

fn weak_implies_strong(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.weak_holds(t[0], t[1])? {
        return vacuous();
    }
    holds(c.strong_holds(t[0], t[1])?)
}

fn strong_transitive(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.strong_holds(t[0], t[1])? || !c.strong_holds(t[1], t[2])? {
        return vacuous();
    }
    holds(c.strong_holds(t[0], t[2])?)
}

fn weak_transitive(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.weak_holds(t[0], t[1])? || !c.weak_holds(t[1], t[2])? {
        return vacuous();
    }
    holds(c.weak_holds(t[0], t[2])?)
}

fn strong_antisym(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.strong_holds(t[0], t[1])? || !c.strong_holds(t[1], t[0])? {
        return vacuous();
    }
    holds(isomorphic(c.g(t[0]), c.g(t[1])))
}

fn weak_antisym(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.weak_holds(t[0], t[1])? || !c.weak_holds(t[1], t[0])? {
        return vacuous();
    }
    holds(isomorphic(c.g(t[0]), c.g(t[1])))
}

fn strong_on(c: &Ctx, x: &FlowGraph, y: &FlowGraph) -> Result<Option<bool>> {
    if !order_fits(&c.limits, x) || !order_fits(&c.limits, y) {
        return Ok(None);
    }
    Ok(Some(strong_leq_with(x, y, &c.limits)?.is_some()))
}

fn weak_on(c: &Ctx, x: &FlowGraph, y: &FlowGraph) -> Result<Option<bool>> {
    if !order_fits(&c.limits, x) || !order_fits(&c.limits, y) {
        return Ok(None);
    }
    Ok(Some(weak_leq_with(x, y, &c.limits)?.is_some()))
}

fn opt_check(r: Option<bool>) -> Result<Check> {
    Ok(r.map_or(Check::Vacuous, Check::holds))
}

fn strong_preserve_right_mul(c: &Ctx, t: &[usize]) -> Result<Check> {
    let Some(w) = c.strong_witness(t[0], t[1])? else {
        return vacuous();
    };
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    let qd = d.edge_count();
    let ad = otimes(a, d);
    let bd = otimes(b, d);
    let inv = inverse(&bd, qd);
    let carry = |phi: &[EdgeId]| -> Vec<EdgeId> {
        ad.edge_bijection.iter().map(|&(e, g)| inv[phi[e] * qd + g]).collect()
    };
    let (img_s, img_t) = (carry(&w.phi_s.edges), carry(&w.phi_t.edges));
    if strong_witness_from_edge_images(&ad.product, &bd.product, &img_s, &img_t).is_some() {
        return holds(true);
    }
    opt_check(strong_on(c, &ad.product, &bd.product)?)
}

fn strong_plus_right(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.strong_holds(t[0], t[1])? {
        return vacuous();
    }
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    opt_check(strong_on(c, &plus(a, d), &plus(b, d))?)
}

fn strong_plus_left(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.strong_holds(t[0], t[1])? {
        return vacuous();
    }
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    opt_check(strong_on(c, &plus(d, a), &plus(d, b))?)
}

fn strong_left_mul(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.strong_holds(t[0], t[1])? {
        return vacuous();
    }
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    opt_check(strong_on(c, &times(d, a), &times(d, b))?)
}

fn weak_left_mul(c: &Ctx, t: &[usize]) -> Result<Check> {
    if !c.weak_holds(t[0], t[1])? {
        return vacuous();
    }
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    opt_check(weak_on(c, &times(d, a), &times(d, b))?)
}

/// Image of every edge of A under a weak witness.
fn edge_images(a: &FlowGraph, w: &WeakWitness) -> Vec<EdgeId> {
    let mut img = vec![0; a.edge_count()];
    for (part, phi) in [(&w.splitting.h1, &w.phi1), (&w.splitting.h2, &w.phi2)] {
        for (k, &e) in part.edges.iter().enumerate() {
            img[e] = phi.edges[k];
        }
    }
    img
}

fn weak_preserve_all(c: &Ctx, t: &[usize]) -> Result<Check> {
    let Some(w) = c.weak_witness(t[0], t[1])? else {
        return vacuous();
    };
    let (a, b, d) = (c.g(t[0]), c.g(t[1]), c.g(t[2]));
    let (qa, qb, qd) = (a.edge_count(), b.edge_count(), d.edge_count());
    let img = edge_images(a, &w);
    let h1 = &w.splitting.h1.edges;

    // A⊕C ≤ B⊕C: C rides along in H₂
    let (x, y) = (plus(a, d), plus(b, d));
    let mut im: Vec<EdgeId> = img.clone();
    im.extend((0..qd).map(|f| qb + f));
    if weak_witness_from_edge_images(&x, &y, h1, &im).is_none() && weak_on(c, &x, &y)? != Some(true) {
        return holds(false);
    }

    // C⊕A ≤ C⊕B: C rides along in H₁
    let (x, y) = (plus(d, a), plus(d, b));
    let h: Vec<EdgeId> = (0..qd).chain(h1.iter().map(|&e| qd + e)).collect();
    let im: Vec<EdgeId> = (0..qd).chain(img.iter().map(|&e| qd + e)).collect();
    if weak_witness_from_edge_images(&x, &y, &h, &im).is_none() && weak_on(c, &x, &y)? != Some(true) {
        return holds(false);
    }

    // A⊗C ≤ B⊗C: substitute C into both parts
    let ad = otimes(a, d);
    let bd = otimes(b, d);
    let inv = inverse(&bd, qd);
    let mut in_h1 = vec![false; qa];
    for &e in h1 {
        in_h1[e] = true;
    }
    let h: Vec<EdgeId> = (0..ad.edge_bijection.len()).filter(|&f| in_h1[ad.edge_bijection[f].0]).collect();
    let im: Vec<EdgeId> = ad.edge_bijection.iter().map(|&(e, g)| inv[img[e] * qd + g]).collect();
    if weak_witness_from_edge_images(&ad.product, &bd.product, &h, &im).is_none()
        && weak_on(c, &ad.product, &bd.product)? != Some(true)
    {
        return holds(false);
    }
    holds(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::rev;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique_and_named_instances_have_the_right_arity() {
        let ids: HashSet<_> = catalog().iter().map(|l| l.id).collect();
        assert_eq!(ids.len(), catalog().len());
        for l in catalog() {
            if let Some(f) = l.named {
                assert_eq!(f().len(), l.arity, "{}", l.id);
                assert_eq!(l.expectation, Expectation::Fails);
            }
        }
    }

    #[test]
    fn roots_of_multiples() {
        let f4 = nat(4);
        let r = roots_of(&f4).unwrap();
        // F₄ = 4·F₁ = 2·F₂ = 1·F₄
        assert_eq!(r.len(), 3);
        let two_loops = scalar_multiple(2, &FlowGraph::unit_loop()).unwrap();
        assert!(roots_of(&two_loops).unwrap().contains(&canonical_key(&FlowGraph::unit_loop()).unwrap()));
    }

    #[test]
    fn two_cycle_is_fixed_by_reversal() {
        let a = cycle(2, 0, 1);
        assert!(isomorphic(&times(&a, &rev()), &a));
        assert!(isomorphic(&times(&rev(), &a), &a));
    }
}
