mod common;

use common::*;
use indel_entropy::embed::{deletion_ball, embedding_number, insertion_ball, insertion_ball_size};
use indel_entropy::entropy::{input_entropy, input_entropy_auto, output_entropy};
use indel_entropy::{ChannelSpec, Config, Direction, Word};

fn entries(ball: &indel_entropy::WeightedBall) -> Vec<(Vec<u8>, u128)> {
    ball.entries().iter().map(|(w, c)| (w.symbols().to_vec(), *c)).collect()
}

#[test]
fn embedding_number_matches_subset_walk() {
    for q in 2..=3 {
        for n in 0..=7 {
            for x in all_words(q, n) {
                for m in 0..=n.min(3) {
                    for y in all_words(q, m) {
                        let got = embedding_number(&to_word(&x, q), &to_word(&y, q)).unwrap();
                        assert_eq!(got, omega_subsets(&x, &y), "x={x:?} y={y:?}");
                        assert_eq!(got, omega(&x, &y));
                    }
                }
            }
        }
    }
}

#[test]
fn deletion_ball_matches_events() {
    let cfg = Config::default();
    for q in 2..=3 {
        for n in 0..=7 {
            for x in all_words(q, n) {
                for k in 0..=n.min(3) {
                    let ball = deletion_ball(&to_word(&x, q), k, &cfg).unwrap();
                    let want: Vec<_> = deletion_events(&x, k).into_iter().collect();
                    assert_eq!(entries(&ball), want, "x={x:?} k={k}");
                }
            }
        }
    }
}

#[test]
fn insertion_ball_matches_events() {
    let cfg = Config::default();
    for q in 2..=3 {
        for m in 0..=5 {
            for y in all_words(q, m) {
                for k in 0..=2 {
                    let ball = insertion_ball(&to_word(&y, q), k, &cfg).unwrap();
                    let want: Vec<_> = insertion_events(&y, k, q).into_iter().collect();
                    assert_eq!(entries(&ball), want, "y={y:?} k={k}");
                    assert_eq!(
                        ball.len() as u128,
                        insertion_ball_size(m, k, q).unwrap(),
                        "y={y:?} k={k}"
                    );
                }
            }
        }
    }
}

#[test]
fn input_entropy_matches_bayes_scan() {
    let cfg = Config::default();
    for q in 2..=3 {
        for m in 1..=5 {
            for y in all_words(q, m) {
                let yw = to_word(&y, q);
                for k in 1..=2 {
                    let del = input_entropy_auto(Direction::Deletion, k, &yw, &cfg).unwrap().bits;
                    assert!((del - bayes_input_entropy(&y, m + k, q)).abs() < 1e-12, "del y={y:?} k={k}");
                    if k <= m {
                        let ins = input_entropy_auto(Direction::Insertion, k, &yw, &cfg).unwrap().bits;
                        assert!((ins - bayes_input_entropy(&y, m - k, q)).abs() < 1e-12, "ins y={y:?} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn output_entropy_matches_event_distribution() {
    let cfg = Config::default();
    for q in 2..=3 {
        for n in 1..=5 {
            for x in all_words(q, n) {
                let xw = to_word(&x, q);
                for k in 1..=2 {
                    let spec = ChannelSpec::for_input(Direction::Insertion, k, &xw).unwrap();
                    let got = output_entropy(&spec, &xw, &cfg).unwrap().bits;
                    let want = shannon(insertion_events(&x, k, q).into_values());
                    assert!((got - want).abs() < 1e-12);
                    if k <= n {
                        let spec = ChannelSpec::for_input(Direction::Deletion, k, &xw).unwrap();
                        let got = output_entropy(&spec, &xw, &cfg).unwrap().bits;
                        let want = shannon(deletion_events(&x, k).into_values());
                        assert!((got - want).abs() < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn enumerated_entropy_uses_the_right_ball() {
    let cfg = Config::default();
    let y = Word::parse("0110", 2).unwrap();
    let spec = ChannelSpec::for_output(Direction::Deletion, 2, &y).unwrap();
    let report = input_entropy(&spec, &y, &cfg).unwrap();
    assert_eq!(report.ball_size, Some(insertion_ball_size(4, 2, 2).unwrap() as u64));
    let spec = ChannelSpec::for_output(Direction::Insertion, 2, &y).unwrap();
    let report = input_entropy(&spec, &y, &cfg).unwrap();
    assert_eq!(report.ball_size, Some(deletion_events(&[0, 1, 1, 0], 2).len() as u64));
}
