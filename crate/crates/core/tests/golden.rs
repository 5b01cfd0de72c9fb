use helixlab::explorer::{explore_markov_depth, explore_str};
use helixlab::lattice::ProjectiveSpace;
use helixlab::{export_dot, export_json};

#[test]
fn markov_depth_two_dot() {
    let g = explore_markov_depth(2, None).unwrap();
    let want = include_str!("golden/markov_depth2.dot");
    assert_eq!(export_dot(&g), want);
    assert_eq!((g.node_count(), g.edge_count()), (10, 12));
}

#[test]
fn exports_ignore_thread_count() {
    let space = ProjectiveSpace::new(2).unwrap();
    let one = explore_str(space, 3, Some(1)).unwrap();
    let many = explore_str(space, 3, Some(4)).unwrap();
    assert_eq!(export_dot(&one), export_dot(&many));
    assert_eq!(export_json(&one), export_json(&many));
}
