pub mod bench;
pub mod evaluate;
pub mod mask;
pub mod simulate;
pub mod tune;
