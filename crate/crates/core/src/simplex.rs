//! Nelder-Mead simplex descent on an unconstrained box-free domain.

#[derive(Debug, Clone, Copy)]
pub(crate) struct SimplexOptions<const N: usize> {
    pub initial_step: [f64; N],
    /// Stop once every vertex is within this distance (max-norm) of the best.
    pub step_tol: f64,
    pub max_evals: usize,
    /// Stop as soon as the best value is at or below this.
    pub target: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SimplexOutcome<const N: usize> {
    pub best: [f64; N],
    pub value: f64,
    pub evaluations: usize,
    /// Smallest simplex size reached.
    pub size: f64,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

pub(crate) fn minimize<const N: usize, F>(
    mut f: F,
    x0: [f64; N],
    opts: &SimplexOptions<N>,
) -> SimplexOutcome<N>
where
    F: FnMut(&[f64; N]) -> f64,
{
    let mut evals = 0usize;
    let mut eval = |x: &[f64; N], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut points: Vec<[f64; N]> = Vec::with_capacity(N + 1);
    points.push(x0);
    for (i, step) in opts.initial_step.iter().enumerate() {
        let mut p = x0;
        p[i] += step;
        points.push(p);
    }
    let mut values: Vec<f64> = points.iter().map(|p| eval(p, &mut evals)).collect();
    let mut size = f64::INFINITY;

    loop {
        let mut order: Vec<usize> = (0..=N).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        points = order.iter().map(|&i| points[i]).collect();
        values = order.iter().map(|&i| values[i]).collect();

        size = size.min(simplex_size(&points));
        let hit_target = opts.target.is_some_and(|t| values[0] <= t);
        if size < opts.step_tol || hit_target || evals >= opts.max_evals {
            break;
        }

        let mut centroid = [0.0; N];
        for p in &points[..N] {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / N as f64;
            }
        }
        let worst = points[N];
        let along = |t: f64| -> [f64; N] {
            let mut out = [0.0; N];
            for i in 0..N {
                out[i] = centroid[i] + t * (centroid[i] - worst[i]);
            }
            out
        };

        let reflected = along(REFLECT);
        let fr = eval(&reflected, &mut evals);
        if fr < values[0] {
            let expanded = along(EXPAND);
            let fe = eval(&expanded, &mut evals);
            if fe < fr {
                points[N] = expanded;
                values[N] = fe;
            } else {
                points[N] = reflected;
                values[N] = fr;
            }
            continue;
        }
        if fr < values[N - 1] {
            points[N] = reflected;
            values[N] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[N] {
            let p = along(CONTRACT);
            let v = eval(&p, &mut evals);
            (p, v)
        } else {
            let p = along(-CONTRACT);
            let v = eval(&p, &mut evals);
            (p, v)
        };
        if fc < values[N].min(fr) {
            points[N] = contracted;
            values[N] = fc;
            continue;
        }
        let best = points[0];
        for i in 1..=N {
            for (x, b) in points[i].iter_mut().zip(&best) {
                *x = b + SHRINK * (*x - b);
            }
            values[i] = eval(&points[i], &mut evals);
        }
    }

    SimplexOutcome {
        best: points[0],
        value: values[0],
        evaluations: evals,
        size,
    }
}

fn simplex_size<const N: usize>(points: &[[f64; N]]) -> f64 {
    let best = &points[0];
    points[1..]
        .iter()
        .flat_map(|p| p.iter().zip(best).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
}
