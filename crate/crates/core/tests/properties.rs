use mzv_core::closedform::{
    coefficient_to_zeta, ems_from_fkmt, fkmt_from_ems, gen_ems, gen_fkmt, zeta_ems_closed,
    zeta_fkmt,
};
use mzv_core::hopf_words::{shuffle0, Letter, Word};
use mzv_core::renorm::{CharacterState, Composition};
use proptest::prelude::*;

fn composition(max_depth: usize, max_entry: u32) -> impl Strategy<Value = Composition> {
    prop::collection::vec(0..=max_entry, 1..=max_depth).prop_map(|v| Composition::new(v).unwrap())
}

fn admissible(max_weight: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 0..max_weight).prop_map(|bits| {
        if bits.is_empty() {
            return Word::unit();
        }
        let mut letters: Vec<Letter> = bits
            .iter()
            .map(|&b| if b { Letter::Y } else { Letter::D })
            .collect();
        *letters.last_mut().unwrap() = Letter::Y;
        Word::from_letters(letters)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn birkhoff_matches_closed_form(ks in composition(3, 3)) {
        let mut st = CharacterState::for_weight(ks.word_weight());
        prop_assert_eq!(st.zeta_ems_birkhoff(&ks).unwrap(), zeta_ems_closed(&ks));
    }

    #[test]
    fn conversions_invert(ks in composition(3, 3)) {
        prop_assert_eq!(ems_from_fkmt(&ks).unwrap(), zeta_ems_closed(&ks));
        prop_assert_eq!(fkmt_from_ems(&ks).unwrap(), zeta_fkmt(&ks));
    }

    #[test]
    fn generating_functions_hold_the_values(ks in composition(3, 2)) {
        let n = ks.depth();
        let cap = ks.total();
        prop_assert_eq!(coefficient_to_zeta(&gen_fkmt(n, cap).unwrap(), &ks).unwrap(), zeta_fkmt(&ks));
        prop_assert_eq!(coefficient_to_zeta(&gen_ems(n, cap).unwrap(), &ks).unwrap(), zeta_ems_closed(&ks));
    }

    #[test]
    fn plus_part_is_multiplicative(u in admissible(4), v in admissible(4)) {
        let mut st = CharacterState::for_weight(u.weight() + v.weight());
        prop_assert!(st.shuffle_relation_check(&u, &v).unwrap());
    }

    // the product only commutes modulo the relation ideal, so compare images
    #[test]
    fn shuffle_commutes_under_phi(u in admissible(5), v in admissible(5)) {
        let mut st = CharacterState::for_weight(u.weight() + v.weight());
        let a = st.phi_sum(&shuffle0(&u, &v)).unwrap();
        let b = st.phi_sum(&shuffle0(&v, &u)).unwrap();
        prop_assert!(a.agrees_with(&b));
    }
}
