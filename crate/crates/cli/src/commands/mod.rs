pub mod evaluate;
pub mod process;
pub mod simulate;
pub mod sweep;
