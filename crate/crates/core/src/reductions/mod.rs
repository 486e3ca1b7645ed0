mod clique;
mod evenset;
mod instance;
mod learning;
mod mdc;
mod viola;

pub use clique::{assemble_clique_solution, clique_to_vectorsum, extract_clique, CliqueGadgetLayout, GadgetColumn};
pub use evenset::{
    assemble_evenset_witness, build_system, validate_sketch, vectorsum_to_evenset, EvenSetConfig, EvenSetLayout,
    SoundnessReport, MAX_EXPLICIT_VARIABLES,
};
pub use instance::{EvenSetInstance, PointValueSet, VectorSumInstance};
pub use learning::{amplify_pointvalues, amplify_with_generator, junta_eps, junta_hardness_instance, vectorsum_to_pointvalues};
pub use mdc::{
    mdc_tensor, mdc_to_learning, mdc_walk_amplify, mdc_walk_amplify_sampled, walk_avoidance_bound, MdcParams,
};
pub use viola::{evenset_to_fooling_points, fooling_points_with_generator, viola_shift, ShiftMode};
