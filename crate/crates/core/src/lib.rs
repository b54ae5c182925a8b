//! Modular data, modular invariants and local extensions for `SU(2)_k` and
//! the `c < 1` Virasoro minimal models, together with exact `q`-series
//! arithmetic for the `j`-function.

pub mod extensions;
pub mod fusion;
pub mod invariants;
pub mod models;
pub mod modular;
pub mod qseries;

pub use fusion::{
    AxiomReport, AxiomViolation, DimensionVector, FusionError, FusionRing, FusionRules, SectorLabel,
};
pub use invariants::{
    AdeGraph, AdeLabel, AdeName, InvariantError, InvariantMatrix, SearchConfig, TypeFlag,
};
pub use models::{KacLabel, ModelError};
pub use modular::{ModularData, ModularError, Tolerances, C64};
pub use qseries::{IntSeries, QSeries, RatSeries, SeriesError};
