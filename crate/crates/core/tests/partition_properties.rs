mod common;

use common::dv;
use kacpoly::partitions::{
    linearize_strata, multipartitions_of, pairing, pairing_via_conjugates, partitions_of, Multipartition, Partition,
};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=5, 0..6).prop_map(|v| Partition::new(v).unwrap())
}

proptest! {
    #[test]
    fn pairing_conventions_agree(l in partition(), m in partition()) {
        prop_assert_eq!(pairing(&l, &m), pairing_via_conjugates(&l, &m));
        prop_assert_eq!(pairing(&l, &m), pairing(&m, &l));
    }

    #[test]
    fn conjugation_is_an_involution(l in partition()) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().weight(), l.weight());
    }

    #[test]
    fn display_round_trips(l in partition(), m in partition()) {
        let pi = Multipartition::new(vec![l.clone(), m]);
        prop_assert_eq!(pi.to_string().parse::<Multipartition>().unwrap(), pi);
        prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    assert_eq!(multipartitions_of(&dv(&[4, 4])).count(), 25);
    assert_eq!(multipartitions_of(&dv(&[2, 3, 1])).count(), 6);
}

#[test]
fn every_multipartition_appears_once() {
    let all: Vec<_> = multipartitions_of(&dv(&[3, 2])).collect();
    let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
    assert_eq!(all.len(), set.len());
    assert!(all.iter().all(|pi| pi.dimension() == dv(&[3, 2])));
    let order = linearize_strata(all.clone());
    assert_eq!(order.len(), all.len());
}
