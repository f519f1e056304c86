//! Finite-dimensional subspaces of rational H2 functions: Toeplitz kernels,
//! model spaces, their images under composition and multiplication, maximal
//! vectors and near S*-invariance.

mod construct;
mod maximal;
mod minimal;
mod structure;
mod subspace;

pub use construct::{
    annihilates, apply_composition, backward_shift, is_nearly_sstar_invariant,
    kernel_maximal_vector, model_space, multiply_subspace, toeplitz_kernel, NearInvarianceReport,
};
pub use maximal::{
    crofoot_maximal_vector, is_maximal_vector, minimal_kernel_of_vector, transport_maximal_vector,
    MaximalityCertificate, TransportVariant,
};
pub use minimal::{
    automorphism_weight, automorphism_zero, certify_minimal_model, minimal_kernel_of_composed,
    minimal_kernel_of_multiplied, minimal_kernel_post_multiplied_composed,
    minimal_kernel_pre_multiplied_composed, minimal_model_containing_composition,
    minimal_model_weighted_post, minimal_model_weighted_pre, model_branch, multiplied_kernel_exact,
    MinimalityReport, ModelBranch,
};
pub use structure::{
    coburn_check, composition_maps_into, hitt_decomposition, lcm_minimal_kernel_family,
    CoburnReport, CompositionInclusion, HittDecomposition, LcmFamilyReport,
};
pub use subspace::{membership, subspace_relations, Subspace, SubspaceRelations};

#[cfg(test)]
mod tests;
