import pytest

HEADER = (
    "L,N_I,trials,mean_physics,se_physics,theory_physics,"
    "gain_conventional,delta_empirical,delta_theory"
)

# plausible standalone fixture rows; the plot never recomputes them
ROWS = [
    "1,16,100,4.9e-05,3.1e-07,5.0e-05,3.2e-05,5.3125e-01,5.4e-01",
    "1,64,100,5.2e-04,2.9e-06,5.3e-04,4.4e-04,1.8182e-01,1.9e-01",
    "2,16,100,2.1e-03,1.4e-05,2.2e-03,1.1e-03,9.0909e-01,9.3e-01",
    "2,64,100,9.8e-02,6.3e-04,9.9e-02,7.5e-02,3.0667e-01,3.1e-01",
    "3,16,100,4.4e-01,3.5e-03,4.5e-01,2.4e-01,8.3333e-01,8.6e-01",
    "3,64,100,2.2e+01,1.8e-01,2.3e+01,1.6e+01,3.7500e-01,3.8e-01",
]


@pytest.fixture
def make_csv(tmp_path):
    """Write CSV content to a temp file and return its path."""

    def _write(*lines, name="sweep.csv"):
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write


@pytest.fixture
def sweep_csv(make_csv):
    return make_csv(
        "# multiris delta-sweep",
        "# master_seed=1",
        HEADER,
        *ROWS,
    )
