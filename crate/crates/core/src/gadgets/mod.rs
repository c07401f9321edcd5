//! Disk gadget synthesis and full instance assembly.

mod edge;
mod fvs;
mod instance;
mod isolation;
pub mod runs;
mod vertex;
mod weighted;

pub use edge::{synth_edge_gadget, synth_edge_gadget_cached, synth_edge_gadget_with, CabinBox, EdgeGadgetLayout, LocalCache};
pub use instance::{check_subset, DiskInstance};
pub use vertex::{checked_ring, copy_offset, ring_centers, ring_is_cycle, synth_mc_vertex_gadget, synth_vertex_gadget, MC_COPIES};
pub use weighted::{lane_offset, synth_udmc_instance, synth_weighted_edge_gadget, UdmcLayout, WeightedEdgeGadget, MAX_WEIGHT};
pub use isolation::{
    outer_point, place_face_points, synth_isolation_instance, synth_isolation_layout, DisjointnessReport, IsolationLayout,
};
pub use fvs::{synth_acc_instance, synth_fvs_vertex_gadget, AccLayout, FvsRoute, FvsVertexGadget, MAX_FVS_DEGREE};
