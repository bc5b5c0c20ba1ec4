//! The `p(n,k)` triangle and its exact properties.

mod lemmas;
mod triangle;
mod unimodal;

pub use lemmas::{
    a_ratio, even_head_and_closed_form, lemma_gr_check, lemma_gr_row, lemma_links_sum,
    odd_head_and_closed_form, peak_sign_check, sign_sum_head,
};
pub use triangle::{next_row, pnk_direct, NearDiagonal, PnkRows, PnkTriangle};
pub use unimodal::{
    check_proposition_conditions, generic_f, peak_k, verify_unimodal_profile, verify_unimodal_row,
    ConditionOutcome, PropositionReport, UnimodalProfile, WeightedSequence,
};
