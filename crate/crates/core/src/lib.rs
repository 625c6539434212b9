//! Antichain saturation in the Boolean lattice `2^[n]`.
//!
//! A family of subsets of `[n]` is *k-antichain saturated* when it holds no
//! `k` pairwise incomparable sets, yet adding any absent set creates `k`
//! of them. This crate checks saturation, builds the known extremal
//! families, and searches exhaustively for the smallest saturated families
//! at small `n`.

pub mod antichain;
pub mod constructions;
mod error;
mod flow;
pub mod lattice;
pub mod saturation;
pub mod search;

pub use antichain::{
    brute_force_max_antichain, has_k_antichain, k_antichain_witness, max_antichain,
    max_antichain_size, min_chain_partition, Chain, ChainPartition,
};
pub use constructions::{bounds_report, bundle_of_full_chains, six_saturated_family, BoundsEnvelope};
pub use error::{Error, Result};
pub use lattice::{
    canonical_form, comparable, complement_family, level_profile, parse_family, render_family,
    Family, GroundSize, LevelProfile, SubsetMask,
};
pub use saturation::{
    check_lemma1, full_chain_cover, is_k_saturated, is_k_saturated_with, FreenessMode,
    FullChainCover, SaturationReport,
};
pub use search::{
    enumerate_full_chains, gap_report, min_saturated_size, probe_conjecture2, probe_conjecture3,
    GapRow, SearchConfig, SearchResult,
};
