//! Fixed registry of the facts a report may cite. Every verdict carries
//! keys from this table and nothing else.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Citation(&'static str);

impl Citation {
    pub fn key(self) -> &'static str {
        self.0
    }

    pub fn statement(self) -> &'static str {
        REGISTRY
            .iter()
            .find(|(c, _)| *c == self)
            .map(|(_, s)| *s)
            .expect("every citation constant is registered")
    }
}

macro_rules! citations {
    ($($name:ident = $key:literal => $stmt:literal;)*) => {
        $(pub const $name: Citation = Citation($key);)*

        pub const REGISTRY: &[(Citation, &str)] = &[$(($name, $stmt)),*];
    };
}

citations! {
    CROSSED_PRODUCT_STAGES = "structure.stages"
        => "C*(Z/2, D_n) ≅ M_t(n) ⊕ M_t(n) with connecting maps (a,b) ↦ (a⊗p + b⊗q, b⊗p + a⊗q)";
    CROSSED_PRODUCT_AF = "structure.af"
        => "the crossed product of a product-type action is a unital AF algebra";
    K0_COLIMIT = "structure.k0-colimit"
        => "K0 of the crossed product is the colimit of Z² under T_n = [[p_n, q_n], [q_n, p_n]]";
    DUAL_FLIP = "structure.dual-flip"
        => "the dual action acts on K0 as the colimit of (j, k) ↦ (k, j)";
    STRICTLY_APPROX_REPRESENTABLE = "structure.approx-representable"
        => "every product-type Z/2 action is strictly approximately representable";
    DUAL_STRICT_ROKHLIN = "structure.dual-strict-rokhlin"
        => "the dual of a product-type action has the strict Rokhlin property";
    SWAP_INVARIANCE = "structure.swap"
        => "exchanging p_n and q_n does not change the automorphism";
    CONDENSE = "condense.ranks"
        => "a block of factors condenses to one factor with ranks from T_N⋯T_1 and λ multiplicative";
    STRICT_ROKHLIN = "strict-rokhlin.symmetric-factors"
        => "strict Rokhlin property ⇔ infinitely many n with rank p_n = rank q_n";
    UHF = "strict-rokhlin.uhf"
        => "the crossed product is UHF ⇔ infinitely many symmetric factors; it is then the limit of M_t(n)";
    TOTALLY_ORDERED = "strict-rokhlin.total-order"
        => "K0 of the crossed product is totally ordered ⇔ infinitely many symmetric factors";
    DUAL_TRIVIAL_ON_K0 = "strict-rokhlin.dual-trivial-k0"
        => "the dual action is trivial on K0 ⇔ infinitely many symmetric factors";
    ETA_NONZERO = "strict-rokhlin.eta"
        => "past the last symmetric factor, the class of (1, −1) is nonzero, negated by the dual action, and neither it nor its negative is positive";
    DUAL_APPROX_REPRESENTABLE = "duality.rokhlin-vs-representable"
        => "an action has the (tracial) Rokhlin property ⇔ its dual is (tracially) approximately representable";
    TRACIAL_ROKHLIN = "tracial-rokhlin.tail-products"
        => "tracial Rokhlin property ⇔ Λ(m, ∞) = 0 for all m";
    UNIQUE_TRACE = "tracial-rokhlin.unique-trace"
        => "the crossed product has a unique tracial state ⇔ Λ(m, ∞) = 0 for all m";
    TWO_EXTREME_TRACES = "tracial-rokhlin.two-extreme-traces"
        => "otherwise there are exactly two extreme tracial states, exchanged by the dual action";
    TRACE_PARAMETRIZATION = "traces.parametrization"
        => "tracial states ↔ r ∈ [0, 1] via (r_n, s_n) = T(Λ(n, ∞))(r, 1 − r)";
    T_MATRIX = "traces.t-matrix"
        => "T(λ) = ½[[1+λ, 1−λ], [1−λ, 1+λ]] satisfies T(λμ) = T(λ)T(μ), T(1) = 1, k(n)T(λ_n) = T_n";
    INVARIANT_TRACE = "traces.invariant"
        => "the crossed product has exactly one dual-invariant tracial state";
    OUTER = "outer.gap-factors"
        => "the action is outer ⇔ infinitely many n with λ_n < 1 (q_n ≠ 0)";
    SIMPLE = "outer.simple"
        => "the crossed product is simple ⇔ the action is outer; otherwise it is D ⊕ D";
    INFINITE_PRODUCT = "analysis.infinite-product"
        => "for λ_n ∈ [0, 1], ∏λ_n = 0 ⇔ some λ_n = 0 or Σ(1 − λ_n) diverges";
    TORSION_K0 = "torsion.k0"
        => "stage maps (k, l) ↦ ((2r(n)+1)k, l) on Z ⊕ Z/2^m; the torsion subgroup of K0 is Z/2^m";
    TORSION_K1 = "torsion.k1"
        => "K1 of the crossed product vanishes in the torsion example";
    NOTOR_K0 = "notor.k0"
        => "K0 of the crossed product is a colimit of groups Z², hence torsion-free";
    NOTOR_K1 = "notor.k1"
        => "K1 stage maps are isomorphisms Z → Z, so K1 of the crossed product is Z";
    R_POSITIVE = "torsion.r-positive"
        => "the construction requires r(n) ≥ 1 for all n";
    CANTOR_FREE = "cantor.free"
        => "a finite group action on the Cantor set has the strict Rokhlin property ⇔ it is free";
    CANTOR_TOWER = "cantor.greedy-tower"
        => "N_1 = K_1, N_{k+1} = N_k ∪ (K_{k+1} \\ G·N_k) yields disjoint translates g·N covering X";
    ROKHLIN_PARTITION = "rokhlin.partition"
        => "Rokhlin projections are permuted by the action and sum to 1";
}
