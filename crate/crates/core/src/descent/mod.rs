//! Chern-Simons descent: CS and WZ forms, the zig-zag solver and the class
//! of `ω₀`.

pub mod chain;
pub mod forms;

pub use chain::{
    a_x1, abelian_omega1, omega0_class, omega_chain, phi_leading, phi_representative, zigzag_solve,
    zigzag_solve_permuted, DescentChain, DescentResiduals,
};
pub use forms::{
    cartan_form, chern_simons, curvature, delta_cs, delta_cs_with, left_maurer_cartan, pontryagin,
    right_maurer_cartan, wess_zumino,
};
