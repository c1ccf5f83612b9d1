#![allow(dead_code)]

use ordchoice::verify::{gen_random, GenMode, InstanceShape};
use ordchoice::Instance;
use proptest::prelude::*;

pub fn instance(sizes: Vec<usize>, ground: Option<usize>, seed: u64, mode: GenMode) -> Instance {
    let mut shape = InstanceShape::new(sizes);
    shape.ground = ground;
    gen_random(&shape, seed, &mode).expect("generate").instance
}

/// Random instances with at most `max_menus` menus of 2 to `max_size`
/// alternatives over a ground set that may be larger than every menu.
pub fn arb_instance(max_menus: usize, max_size: usize, mode: GenMode) -> impl Strategy<Value = Instance> {
    (
        proptest::collection::vec(2..=max_size, 1..=max_menus),
        0usize..=2,
        any::<u64>(),
    )
        .prop_map(move |(sizes, extra, seed)| {
            let ground = sizes.iter().copied().max().unwrap() + extra;
            instance(sizes, Some(ground), seed, mode.clone())
        })
}

pub fn arbitrary(max_menus: usize, max_size: usize) -> impl Strategy<Value = Instance> {
    arb_instance(max_menus, max_size, GenMode::Arbitrary)
}

pub fn one_mistake(max_menus: usize, max_size: usize) -> impl Strategy<Value = Instance> {
    arb_instance(max_menus, max_size, GenMode::OneMistake)
}
