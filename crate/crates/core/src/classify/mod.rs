//! Matrix classes, the equivalence checkers, structured generators, and an
//! exact rational oracle.

pub mod checks;
pub mod exact;
pub mod generate;
pub mod predicates;

pub use checks::{
    check_main_theorem, check_prop22, check_prop_mp, check_wcep, check_wmpd_mp, check_wmpd_wcmp,
    Equivalence, IndexOnePair, MainTheorem, Prop22, PropMp,
};
pub use generate::{
    gen_ep, gen_hermitian_singular, gen_nilpotent, gen_partial_isometry, gen_self_pinv,
    gen_with_index,
};
pub use predicates::{
    is_chi_inverse, is_core_ep, is_ep, is_k_ep, is_left_k_ep, is_nilpotent, is_partial_isometry,
};
