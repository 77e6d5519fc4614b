//! Clipping infinite lines against an axis-aligned rectangle.
//!
//! Five interchangeable clippers share one outcome contract
//! ([`clip::ClipOutcome`]): the Liang-Barsky baseline, the
//! separation-function family (SF, MSF, MSF-1) that classifies the line by
//! the signs of its separation function at the window corners before
//! computing anything, and LSA, which picks the edge family to intersect
//! from the line's direction. An independent oracle ([`verify`]), seeded
//! scenario generators ([`workload`]) and a batch benchmark ([`bench`])
//! complete the crate.
//!
//! ```
//! use lineclip::{clip_msf, ClipOutcome, ClipWindow, Line};
//!
//! let win = ClipWindow::new(0.0, 0.0, 10.0, 10.0).unwrap();
//! let line = Line::from_coords(0.0, 1.0, 1.0, 2.0).unwrap();
//! match clip_msf(&line, &win) {
//!     ClipOutcome::Accepted { p, q } => println!("{p} -> {q}"),
//!     ClipOutcome::Rejected => println!("misses the window"),
//! }
//! ```

pub mod bench;
pub mod clip;
pub mod exec;
pub mod geometry;
pub mod verify;
pub mod workload;

pub use clip::{
    clip, clip_counted, clip_lb, clip_lsa, clip_msf, clip_msf1, clip_msf1_unchecked, clip_sf,
    finalize_outcome, AlgorithmId, ClipError, ClipOutcome, OpCounts, EPS_GEOM,
};
pub use exec::{clip_batch, Execution};
pub use geometry::{ClipWindow, GeomError, Line, Point};
pub use verify::{clip_oracle, outcomes_equal, verify_batch, VerifyReport};
pub use workload::{gen_batch, LineBatch, ScenarioId};
