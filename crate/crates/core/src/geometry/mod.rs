//! Exact planar geometry: points, disks, the grid lemmas and parameters.

pub mod disk;
pub mod lemmas;
pub mod params;
pub mod point;

pub use disk::{disks_intersect, point_in_disk, triple_intersection_nonempty, Disk, Provenance};
pub use lemmas::{arctan_identity_holds, min_grid_angle_exceeds, min_grid_line_point_distance_sq};
pub use params::{check_constraints, compute_params, ConstraintReport, ParamMode, ParamSet, ToyOverrides};
pub use point::Point2;
