import pytest

from lcplab import exact as ex
from lcplab.algebra import Metric, OneForm, Subspace
from lcplab.docfmt import parse_document, render_document
from lcplab.errors import DocumentError

SAMPLE = """# the hyperbolic plane motions
dim 3
label e(1,1)
bracket 1 2 : 0 1 0
bracket 1 3 : 0 0 -1
theta : -1 0 0
flat : 0 0 1
"""


def test_parse_sample():
    doc = parse_document(SAMPLE)
    assert doc.dim == 3 and doc.label == "e(1,1)"
    L = doc.algebra()
    assert L.dim == 3
    assert doc.metric() == Metric.identity(3)
    assert doc.one_form() == OneForm.dual(3, 0, -1)
    assert doc.flat() == Subspace.spanned_by([[0, 0, 1]])


def test_roundtrip():
    doc = parse_document(SAMPLE)
    text = render_document(doc.algebra(), doc.metric(), doc.one_form(), doc.flat(), label=doc.label)
    doc2 = parse_document(text)
    assert doc2.brackets == doc.brackets
    assert doc2.theta == doc.theta
    assert doc2.label == doc.label


def test_metric_and_blocks():
    doc = parse_document(
        "dim 2\nmetric : 2 1 ; 1 2\nblock A : 1 0 ; 0 1\nscalar q 2\n"
    )
    assert doc.metric().gram[0, 0] == 2
    assert doc.block("A").shape == (2, 2)
    assert doc.scalars["q"] == 2


@pytest.mark.parametrize(
    "text,frag",
    [
        ("dim 3\nbracket 1 2 : 0 2/4 0", "non-reduced"),
        ("dim 3\nbracket 1 2 : 0 1/0 0", "zero denominator"),
        ("dim 3\nbracket 1 2 : 0 1.5 0", "malformed"),
        ("dim 3\nbracket 2 1 : 0 1 0", "1 <= i < j"),
        ("dim 3\nbracket 1 2 : 0 1 0\nbracket 1 2 : 0 1 0", "duplicate"),
        ("bracket 1 2 : 0 1 0", "dim directive"),
        ("dim 3\nbroket 1 2 : 0 1 0", "unknown directive"),
        ("dim 0", "positive"),
        ("dim 3\nbracket 1 2 : 0 1", "expected 3"),
        ("dim 2\nmetric : 1 0", "2 rows"),
    ],
)
def test_parse_errors(text, frag):
    with pytest.raises(DocumentError) as err:
        parse_document(text)
    assert frag in str(err.value)


def test_error_position_tagged():
    with pytest.raises(DocumentError) as err:
        parse_document("dim 3\nbracket 1 2 : 0 2/4 0")
    assert err.value.line == 2 and err.value.col is not None


def test_negative_denominator_rejected():
    with pytest.raises(DocumentError):
        parse_document("dim 2\nbracket 1 2 : 0 1/-2")
