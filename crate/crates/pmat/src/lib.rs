//! Exact fractional-ideal and pseudo-matrix calculus over Z and maximal
//! quadratic orders O_d: Hermite and Smith reduction, linear solving and
//! module structure, everything certified by explicit comaximality data.

pub mod cert;
pub mod domain;
pub mod error;
pub mod ideal;
pub mod intmat;
pub mod hermite;
pub mod linsolve;
pub mod pseudo;
pub mod quadratic;
pub mod sampling;
pub mod smith;
pub mod testutil;

pub use cert::{comax_certificate, validate_certificate, PruferContext};
pub use domain::{Domain, Elt, Fe, QuadraticOrder};
pub use error::{Error, Result};
pub use ideal::{
    colon_split, drop_superfluous, ideal_eq, ideal_includes, ideal_intersect, ideal_inverse,
    ideal_mul, ideal_quotient, ideal_sum, loc_matrix, member, FgIdeal, LocalizationMatrix,
};
pub use hermite::{
    cokernel_structure, complete_surjective, double_hermite, hermite, image_pseudobasis,
    kernel_pseudobasis, pivot_invertible_minor, CokernelStructure, HermiteConfig, HermiteForm,
    SurjectiveCompletion,
};
pub use intmat::{hnf_int, snf_int, solve_int_linear, IntMat, IntMatrixForm};
pub use linsolve::{cramer_special, patch_local, solvable_by_ideals, solve_full, LinearSolution};
pub use pseudo::{
    change_pseudobasis, det_ideal, determinantal_ideal, elementary_pm, minor_ideal, pm_block,
    pm_inverse, pm_is_invertible, pm_mul, pm_validate, DetIdeal, KMat, PseudoBasis, PseudoMatrix,
};
pub use quadratic::{certificate_quadratic, ideal_zbasis, QuotCtx};
pub use smith::{
    associated_in_quotient, fitting_ideals, smith_bezout_dim1, smith_change_pseudobasis_square,
    smith_change_pseudobasis_wide, smith_pseudo_dedekind, smith_zero_dim, torsion_structure,
    unit_diag_equiv, ChangeOfPseudoBasis, ModuleStructure, QuotSmith, SmithForm, WideChange,
};
