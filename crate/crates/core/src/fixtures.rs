//! Small named instances used by tests, benchmarks and documentation.

use crate::model::Instance;

/// Two disjoint three-element menus with `x ⊳ y ⊳ z` and `x' ⊳ y' ⊳ z'`,
/// `ρ₁ = (x 1/2, y 3/10, z 1/5)` and `ρ₂ = (x' 1/4, y' 7/20, z' 2/5)`.
pub fn two_menu_example() -> Instance {
    Instance::from_strs(
        &["x", "y", "z", "x'", "y'", "z'"],
        &[
            &[("x", "0.50"), ("y", "0.30"), ("z", "0.20")],
            &[("x'", "0.25"), ("y'", "0.35"), ("z'", "0.40")],
        ],
    )
    .expect("valid fixture")
}

/// Menus `{x,y,z}`, `{x,y}`, `{x,z}` under `x ⊳ y ⊳ z` with uniform choice
/// probabilities.
pub fn three_menus_xyz() -> Instance {
    Instance::from_strs(
        &["x", "y", "z"],
        &[
            &[("x", "1/3"), ("y", "1/3"), ("z", "1/3")],
            &[("x", "1/2"), ("y", "1/2")],
            &[("x", "1/2"), ("z", "1/2")],
        ],
    )
    .expect("valid fixture")
}

/// `n` disjoint binary menus `{a_i, b_i}` with `a_i ⊳ b_i` and `ρ_i(b_i)`
/// given per menu as a decimal or `p/q` string.
pub fn binary_menus(worse_mass: &[&str]) -> Instance {
    let names: Vec<(String, String)> = (1..=worse_mass.len())
        .map(|i| (format!("a{i}"), format!("b{i}")))
        .collect();
    let order: Vec<&str> = names
        .iter()
        .flat_map(|(a, b)| [a.as_str(), b.as_str()])
        .collect();
    let complements: Vec<String> = worse_mass
        .iter()
        .map(|m| {
            let m = crate::rational::parse_rational(m).expect("valid mass");
            (crate::rational::one() - m).to_string()
        })
        .collect();
    let menus: Vec<Vec<(&str, &str)>> = names
        .iter()
        .zip(worse_mass)
        .zip(&complements)
        .map(|(((a, b), mb), ma)| vec![(a.as_str(), ma.as_str()), (b.as_str(), *mb)])
        .collect();
    let menu_refs: Vec<&[(&str, &str)]> = menus.iter().map(Vec::as_slice).collect();
    Instance::from_strs(&order, &menu_refs).expect("valid fixture")
}
