//! Finite posets, partition lattices, intersection posets and
//! combinatorial surgery.

mod intersection;
mod iso;
mod partition;
mod poset;
mod surgery;

pub use intersection::{
    all_blocks_short, intersection_poset, local_model, partition_is_disconnected, IntersectionElement,
    Sheet, MAX_INTERSECTION_SIDES,
};
pub use iso::{poset_isomorphic, MAX_ISO_ELEMENTS};
pub use partition::{
    minimal_building_set, partition_lattice, set_partitions, SetPartition, MAX_BUILDING_SET,
    MAX_PARTITION_LATTICE,
};
pub(crate) use partition::parse_block;
pub use poset::{FinitePoset, PosetJson};
pub use surgery::{comb_surgery, CombSurgery, CsElement};
