// One-vs-one RBF SVM on four Gaussian clusters: grid search, training,
// prediction and a model file round trip.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use texture_ensemble::svm::{grid_search, train_multiclass};
use texture_ensemble::{GridSpec, SvmModel};

fn blobs(per_class: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, Vec<String>) {
    let noise = Normal::new(0.0, 0.1).unwrap();
    let corners = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (k, (cx, cy)) in corners.iter().enumerate() {
        for _ in 0..per_class {
            x.push(vec![cx + noise.sample(rng), cy + noise.sample(rng)]);
            y.push(format!("corner{k}"));
        }
    }
    (x, y)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (x, y) = blobs(50, &mut rng);

    let grid = GridSpec::from_exponents((-1, 9, 2), (-5, 3, 2), 5);
    let best = grid_search(&x, &y, &grid, 1)?;
    println!(
        "grid search: C = {}, gamma = {}, cv accuracy {:.3}",
        best.c, best.gamma, best.cv_accuracy
    );

    let model = train_multiclass(&x, &y, 8.0, 0.5)?;
    let (tx, ty) = blobs(25, &mut rng);
    let correct = tx
        .iter()
        .zip(&ty)
        .filter(|(s, l)| model.predict(s).ok() == Some(l.as_str()))
        .count();
    println!(
        "{} binary models, {} support vectors, test accuracy {}/{}",
        model.binaries().len(),
        model.total_support_vectors(),
        correct,
        tx.len()
    );

    let back = SvmModel::from_text(&model.to_text(), "memory")?;
    assert!(tx
        .iter()
        .all(|s| back.predict(s).ok() == model.predict(s).ok()));
    println!(
        "model text round trip predicts identically ({} bytes)",
        model.to_text().len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
