//! Shared benchmark fixtures.

use ordchoice::verify::{gen_random, GenMode, InstanceShape};
use ordchoice::Instance;

/// Seeded arbitrary instance with the given menu sizes.
pub fn arbitrary(sizes: &[usize], seed: u64) -> Instance {
    gen_random(&InstanceShape::new(sizes.to_vec()), seed, &GenMode::Arbitrary)
        .expect("valid shape")
        .instance
}

/// Seeded one-mistake instance with the given menu sizes.
pub fn one_mistake(sizes: &[usize], seed: u64) -> Instance {
    gen_random(&InstanceShape::new(sizes.to_vec()), seed, &GenMode::OneMistake)
        .expect("valid shape")
        .instance
}

/// Shapes from a few hundred to tens of thousands of types.
pub const SHAPES: [(&str, &[usize]); 4] = [
    ("4x4", &[4, 4, 4, 4]),
    ("5x5", &[5, 5, 5, 5, 5]),
    ("3x8", &[3, 3, 3, 3, 3, 3, 3, 3]),
    ("6x6", &[6, 6, 6, 6, 6, 6]),
];
