use afrokhlin_core::cantor::{
    default_cover, greedy_tower, is_free, verify_tower, FiniteGSet, GroupTable,
};
use afrokhlin_core::Error;
use afrokhlin_oracles::{all_actions, cyclic, find_tower_base, klein_four, Table};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gset(table: &Table, action: Vec<Vec<usize>>) -> FiniteGSet {
    let n = action[0].len();
    let group = GroupTable { order: table.len(), table: table.clone() };
    FiniteGSet::new((0..n).map(|i| format!("x{i}")).collect(), group, action).unwrap()
}

#[test]
fn towers_exist_exactly_for_free_actions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for table in [cyclic(2), cyclic(3), klein_four()] {
        for (action, free) in all_actions(&table, 12) {
            let gs = gset(&table, action.clone());
            assert_eq!(is_free(&gs).free, free);
            assert_eq!(find_tower_base(&action).is_some(), free);
            if free {
                let mut cover = default_cover(&gs).unwrap();
                for _ in 0..3 {
                    let tower = greedy_tower(&gs, &cover).unwrap();
                    assert!(verify_tower(&gs, &tower));
                    assert_eq!(tower.base.len() * gs.group_order(), gs.len());
                    cover.shuffle(&mut rng);
                }
            } else {
                assert!(matches!(default_cover(&gs), Err(Error::NotFree { .. })));
            }
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}
