import importlib.util
import os

from harr.bench import load_dataset
from harr.report import read_label_file


def _load_prepare_module():
    here = os.path.dirname(__file__)
    path = os.path.join(here, "..", "demos", "prepare_uci.py")
    spec = importlib.util.spec_from_file_location("prepare_uci", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def test_row_dropping_and_outputs(tmp_path):
    prep = _load_prepare_module()
    raw = tmp_path / "raw.data"
    raw.write_text(
        "classA,x,p,1\n"
        "classA,x,q,1\n"
        "classB,y,?,1\n"  # missing cell: row dropped
        "classB,y,q,2\n"
        "classB,x,p,2\n"
    )
    rows = prep.read_raw(str(raw), ",")
    data, labels = prep.convert(rows, 0, "rows")
    assert len(data) == 4
    # the fourth column was constant before the drop but not after; the
    # second data column keeps both values
    out_dir = prep.write_outputs("toy", data, labels, str(tmp_path / "uci"))
    dataset = load_dataset(
        os.path.join(out_dir, "schema.txt"), os.path.join(out_dir, "data.csv")
    )
    truth = read_label_file(os.path.join(out_dir, "labels.txt"))
    assert dataset.n == 4 and len(truth) == 4
    assert set(truth) == {1, 2}


def test_column_dropping(tmp_path):
    prep = _load_prepare_module()
    raw = tmp_path / "raw.data"
    raw.write_text(
        "e,a,?,const,x\n"
        "p,b,m,const,y\n"
        "e,a,n,const,x\n"
        "p,b,?,const,y\n"
    )
    rows = prep.read_raw(str(raw), ",")
    data, labels = prep.convert(rows, 0, "columns")
    # missing-valued and constant columns dropped, all rows kept
    assert len(data) == 4
    assert len(data[0]) == 2
    assert labels == [1, 2, 1, 2]


def test_whitespace_delimited(tmp_path):
    prep = _load_prepare_module()
    raw = tmp_path / "raw.data"
    raw.write_text("C S x 1 0 0\nD S y 2 0 0\nC A x 1 0 0\n")
    rows = prep.read_raw(str(raw), None)
    data, labels = prep.convert(rows, 0, "rows")
    assert len(data) == 3
    assert labels == [1, 2, 1]
