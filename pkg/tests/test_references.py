import random
from pathlib import Path

import pytest

from newslens.errors import MalformedUrl
from newslens.models import Article, ReferenceLink
from newslens.references import (
    ReferenceClass,
    SciDomainSet,
    classify_reference,
    context_indicators,
    default_sci_domains,
)

FIXTURE = Path(__file__).parent / "fixtures" / "reference_labels.tsv"


def ref(href):
    return ReferenceLink(href=href, anchor_text="", position=0)


def make_article(domain="outlet.com", refs=()):
    return Article(
        article_id="a1",
        url=f"https://{domain}/story",
        outlet_domain=domain,
        title="t",
        body="b",
        references=list(refs),
    )


@pytest.fixture(scope="module")
def labeled_rows():
    rows = []
    for line in FIXTURE.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        domain, href, label = line.split("\t")
        rows.append((domain, href, label))
    assert len(rows) == 50
    return rows


class TestClassifyReference:
    def test_internal(self):
        assert (
            classify_reference("outlet.com", ref("https://outlet.com/also-read"), default_sci_domains())
            is ReferenceClass.INTERNAL
        )

    def test_scientific_journal(self):
        assert (
            classify_reference("outlet.com", ref("https://www.nature.com/articles/x"), default_sci_domains())
            is ReferenceClass.SCIENTIFIC
        )

    def test_external(self):
        assert (
            classify_reference("outlet.com", ref("https://localpaper.org/story"), default_sci_domains())
            is ReferenceClass.EXTERNAL
        )

    def test_internal_beats_scientific(self):
        # A journal's own news blog linking itself is internal, not scientific.
        assert (
            classify_reference("nature.com", ref("https://www.nature.com/news/item"), default_sci_domains())
            is ReferenceClass.INTERNAL
        )

    def test_edu_suffix_rule(self):
        assert (
            classify_reference("outlet.com", ref("https://web.mit.edu/x"), default_sci_domains())
            is ReferenceClass.SCIENTIFIC
        )

    def test_ac_suffix_rule(self):
        assert (
            classify_reference("outlet.com", ref("https://www.ox.ac.uk/x"), default_sci_domains())
            is ReferenceClass.SCIENTIFIC
        )

    def test_custom_suffix_pattern(self):
        sci = SciDomainSet.from_lines([".int"])
        assert (
            classify_reference("outlet.com", ref("https://www.who.int/x"), sci)
            is ReferenceClass.SCIENTIFIC
        )

    def test_fifty_url_oracle_full_agreement(self, labeled_rows):
        sci = default_sci_domains()
        for domain, href, label in labeled_rows:
            got = classify_reference(domain, ref(href), sci)
            assert got.value == label, f"{href} on {domain}: {got.value} != {label}"


class TestContextIndicators:
    def mixed_article(self):
        return make_article(
            refs=[
                ref("https://outlet.com/more"),              # internal
                ref("https://www.nature.com/articles/1"),    # scientific
                ref("https://localpaper.org/story"),         # external
                ref("https://cnn.com/x"),                    # external
                ref("https://arxiv.org/abs/1"),              # scientific
            ]
        )

    def test_counts_and_ratio(self):
        # 1 internal, 2 scientific, 2 external
        result = context_indicators(self.mixed_article())
        assert (result.internal, result.scientific, result.external) == (1, 2, 2)
        assert result.sci_ref_ratio == pytest.approx(0.4)
        assert result.has_references is True

    def test_spec_distribution(self):
        article = make_article(
            refs=[
                ref("https://outlet.com/a"),
                ref("https://www.nature.com/b"),
                ref("https://cnn.com/c"),
                ref("https://arxiv.org/d"),
            ]
        )
        result = context_indicators(article)
        assert (result.internal, result.scientific, result.external) == (1, 2, 1)
        assert result.sci_ref_ratio == pytest.approx(0.5)

    def test_no_references(self):
        result = context_indicators(make_article(refs=[]))
        assert (result.internal, result.scientific, result.external) == (0, 0, 0)
        assert result.sci_ref_ratio == 0.0
        assert result.has_references is False

    def test_only_scientific(self):
        result = context_indicators(make_article(refs=[ref("https://arxiv.org/abs/1")]))
        assert result.sci_ref_ratio == 1.0

    def test_counts_sum_to_reference_count(self):
        article = self.mixed_article()
        result = context_indicators(article)
        assert result.internal + result.external + result.scientific == len(article.references)

    def test_permutation_invariance(self):
        article = self.mixed_article()
        baseline = context_indicators(article)
        rng = random.Random(7)
        refs = list(article.references)
        for _ in range(50):
            rng.shuffle(refs)
            shuffled = make_article(refs=refs)
            assert context_indicators(shuffled) == baseline

    def test_unclassifiable_counted_external(self):
        bad = ReferenceLink(href="https:///nohost", anchor_text="", position=0)
        result = context_indicators(make_article(refs=[bad]))
        assert result.external == 1
        assert result.has_references is True
