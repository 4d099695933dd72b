//! Repetition counting from sequences of dense 2D flow fields.
//!
//! The pipeline measures six flow signals per frame (pooled flow and its
//! first-order differentials), decomposes each with a Morlet continuous
//! wavelet transform, integrates the dominant-frequency ridge into a count
//! and picks the signal whose scalogram admits the cheapest path through
//! time.
//!
//! Modules:
//! * [`flowfield`]: flow fields, `.flo` I/O, Gaussian derivative filters,
//!   pooling and signal extraction.
//! * [`synth`]: ground-truth synthetic data (the 18 recurrence cases,
//!   idealized signals, noise, acceleration).
//! * [`tfa`]: detrending, scale grids, the Morlet CWT and the periodogram
//!   baseline.
//! * [`estimate`]: ridges, count integration, min-cost paths and signal
//!   selection.
//! * [`eval`]: annotations, MAE/OBOA and the experiment runners.

pub mod config;
pub mod error;
pub mod estimate;
pub mod eval;
pub mod flowfield;
pub mod synth;
pub mod tfa;

pub use config::{PathMode, RunConfig};
pub use error::{Error, Result};
pub use estimate::{select_signal, CountEstimate, RidgePath};
pub use eval::{EvalReport, VideoAnnotation};
pub use flowfield::{extract_signals, Channel, FlowField, ForegroundMask, ScalarField, SignalBundle};
pub use synth::{CaseParams, Continuity, MotionCase, MotionType, SyntheticSequence, View};
pub use tfa::{ScaleGrid, Scalogram, Signal};
