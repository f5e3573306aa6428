//! Cellular surgery along the steps of a saturated chain.

mod chain;
mod exact;
mod model;
mod step;

pub use chain::{figures, run_chain, FigureRow, StepRecord, SurgeryTrace, MAX_EXACT_SIDES};
pub use exact::{locate_sphere, surgery_2d, Mode, SurgeryResult};
pub use model::surgery_model;
pub use step::{adjacency, check_embedded_sphere, SurgeryStep};
