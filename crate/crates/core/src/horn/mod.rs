//! Ore-Sato coefficients and the Horn systems, symbols and series they
//! determine.

pub mod bergman;
pub mod catalog;
pub mod coefficient;
pub mod linform;
pub mod mellin;
pub mod screens;
pub mod series;
pub mod symbols;
pub mod system;

pub use bergman::{bergman_kernel, BergmanKernel};
pub use coefficient::{nonconfluency_check, GammaRow, OreSatoCoefficient};
pub use linform::{Factored, LinForm};
pub use mellin::mellin_horn;
pub use screens::{rationality_screens, ScreenReport};
pub use series::{series_eval, SeriesValue};
pub use symbols::{principal_symbols, symbol_resultant, SymbolSet};
pub use system::{compatibility_check, horn_from_ore_sato, verify_horn_solution, HornSystem};
