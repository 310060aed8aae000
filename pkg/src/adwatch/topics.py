"""Latent Dirichlet allocation fitted by collapsed Gibbs sampling.

The functional core (``preprocess``, ``init_model``, ``gibbs_sweep``, ``fit``,
``top_words``, ``doc_topics``, ``perplexity``) works on explicit count
tables; :class:`GibbsLDA` wraps it as a scikit-learn style transformer.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
import re
from dataclasses import asdict, dataclass, field
from importlib import resources

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_documents, check_positive_int, check_positive_real
from .rng import SplitMix64

_WORD_RE = re.compile(r"[^\W\d_]+")


class EmptyCorpus(ValueError):
    pass


def load_stopwords(path=None):
    if path is None:
        text = resources.files("adwatch").joinpath("data/stopwords_en.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip() and not w.startswith("#"))


@dataclass
class Corpus:
    documents: list
    vocabulary: list
    doc_ids: list = field(default_factory=list)
    doc_dates: list = field(default_factory=list)

    def __post_init__(self):
        n = len(self.documents)
        if not self.doc_ids:
            self.doc_ids = [str(i) for i in range(n)]
        if not self.doc_dates:
            self.doc_dates = [None] * n
        if len(self.doc_ids) != n or len(self.doc_dates) != n:
            raise ValueError("documents, doc_ids and doc_dates must be parallel")
        V = len(self.vocabulary)
        for doc in self.documents:
            if any(not 0 <= w < V for w in doc):
                raise ValueError("token id outside vocabulary")
        self.term_index = {t: i for i, t in enumerate(self.vocabulary)}

    @property
    def n_tokens(self):
        return sum(len(d) for d in self.documents)

    def __len__(self):
        return len(self.documents)


def tokenize(text):
    return _WORD_RE.findall(text.lower())


def preprocess(summaries, doc_ids=None, doc_dates=None, *, stopwords=None, min_df=2, min_len=3):
    """Bag-of-words corpus from raw texts.

    Lowercases, splits on non-letters, drops short tokens, stopwords and
    terms found in fewer than ``min_df`` documents. Documents left empty are
    dropped together with their id and date.
    """
    stop = load_stopwords() if stopwords is None else stopwords
    n = len(summaries)
    doc_ids = list(doc_ids) if doc_ids is not None else [str(i) for i in range(n)]
    doc_dates = list(doc_dates) if doc_dates is not None else [None] * n
    tokenized = [[t for t in tokenize(s) if len(t) >= min_len and t not in stop] for s in summaries]
    df = {}
    for toks in tokenized:
        for t in set(toks):
            df[t] = df.get(t, 0) + 1
    vocab, index = [], {}
    docs, ids, dates = [], [], []
    for toks, did, ddate in zip(tokenized, doc_ids, doc_dates):
        doc = []
        for t in toks:
            if df[t] < min_df:
                continue
            if t not in index:
                index[t] = len(vocab)
                vocab.append(t)
            doc.append(index[t])
        if doc:
            docs.append(doc)
            ids.append(did)
            dates.append(ddate)
    if not docs:
        raise EmptyCorpus("no document retains a token after preprocessing")
    return Corpus(docs, vocab, ids, dates)


@dataclass(frozen=True)
class LdaConfig:
    K: int = 5
    alpha: float = 0.1
    beta: float = 0.01
    sweeps: int = 500
    seed: int = 42

    def __post_init__(self):
        check_positive_int(self.K, "K")
        check_positive_int(self.sweeps, "sweeps")
        check_positive_real(self.alpha, "alpha")
        check_positive_real(self.beta, "beta")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


class LdaModel:
    """Topic assignments ``z`` and the count tables they induce.

    Topic-word counts are held word-major (``n_wk[w][k]``) for the sampler;
    ``n_kw`` exposes the topic-major view.
    """

    def __init__(self, config, vocabulary, z, n_dk, n_wk, n_k):
        self.config = config
        self.vocabulary = list(vocabulary)
        self.z = z
        self.n_dk = n_dk
        self.n_wk = n_wk
        self.n_k = n_k

    @property
    def K(self):
        return self.config.K

    @property
    def V(self):
        return len(self.vocabulary)

    @property
    def n_kw(self):
        return np.array(self.n_wk, dtype=np.int64).reshape(self.V, self.K).T

    @classmethod
    def from_assignments(cls, config, corpus, z):
        K, V = config.K, len(corpus.vocabulary)
        n_dk = [[0] * K for _ in corpus.documents]
        n_wk = [[0] * K for _ in range(V)]
        n_k = [0] * K
        for d, (doc, zd) in enumerate(zip(corpus.documents, z)):
            for w, k in zip(doc, zd):
                n_dk[d][k] += 1
                n_wk[w][k] += 1
                n_k[k] += 1
        return cls(config, corpus.vocabulary, [list(zd) for zd in z], n_dk, n_wk, n_k)

    def copy(self):
        return LdaModel(
            self.config, self.vocabulary, [list(r) for r in self.z],
            [list(r) for r in self.n_dk], [list(r) for r in self.n_wk], list(self.n_k),
        )

    def check_counts(self, corpus):
        """True iff every count table equals the tally of ``z``."""
        fresh = LdaModel.from_assignments(self.config, corpus, self.z)
        return (fresh.n_dk == self.n_dk and fresh.n_wk == self.n_wk and fresh.n_k == self.n_k
                and all(c >= 0 for row in self.n_wk for c in row))

    def phi(self):
        beta = self.config.beta
        n_kw = self.n_kw.astype(float)
        return (n_kw + beta) / (np.asarray(self.n_k, float)[:, None] + self.V * beta)

    def theta(self):
        alpha, K = self.config.alpha, self.K
        n_dk = np.asarray(self.n_dk, float).reshape(-1, K)
        return (n_dk + alpha) / (n_dk.sum(axis=1, keepdims=True) + K * alpha)

    def to_dict(self):
        return {
            "config": asdict(self.config),
            "vocabulary": self.vocabulary,
            "z": self.z,
        }


def init_model(corpus, config, rng):
    """Uniform random topic per token, drawn in document/position order."""
    K = config.K
    z = [[rng.randbelow(K) for _ in doc] for doc in corpus.documents]
    return LdaModel.from_assignments(config, corpus, z)


def gibbs_sweep(model, corpus, rng):
    """One in-place pass of collapsed Gibbs sampling over every token.

    For each token the weight of topic k is
    ``(n_dk+alpha) * (n_kw+beta) / (n_k+V*beta)`` with the token's own
    counts removed; the new topic is the first k whose cumulative weight
    exceeds ``u * total`` for one uniform draw ``u``.
    """
    K = model.K
    alpha, beta = model.config.alpha, model.config.beta
    vbeta = model.V * beta
    n_dk, n_wk, n_k = model.n_dk, model.n_wk, model.n_k
    rand = rng.random
    topics = range(K)
    last = K - 1
    cum = [0.0] * K
    for d, doc in enumerate(corpus.documents):
        zd = model.z[d]
        ndk = n_dk[d]
        for i, w in enumerate(doc):
            k = zd[i]
            nwk = n_wk[w]
            ndk[k] -= 1
            nwk[k] -= 1
            n_k[k] -= 1
            total = 0.0
            for t in topics:
                total += (ndk[t] + alpha) * (nwk[t] + beta) / (n_k[t] + vbeta)
                cum[t] = total
            u = rand() * total
            k = 0
            while k < last and cum[k] <= u:
                k += 1
            zd[i] = k
            ndk[k] += 1
            nwk[k] += 1
            n_k[k] += 1
    return model


def fit(corpus, config, callback=None):
    """Seeded initialisation followed by ``config.sweeps`` Gibbs sweeps.

    ``callback(sweep, model)`` runs after every sweep (1-based).
    """
    if not corpus.documents or not corpus.n_tokens:
        raise EmptyCorpus("cannot fit an empty corpus")
    rng = SplitMix64(config.seed)
    model = init_model(corpus, config, rng)
    for s in range(1, config.sweeps + 1):
        gibbs_sweep(model, corpus, rng)
        if callback is not None:
            callback(s, model)
    return model


def top_words(model, k, n=5):
    """``n`` highest-phi ``(term, phi)`` pairs of topic ``k``; ties alphabetical."""
    if not 0 <= k < model.K:
        raise IndexError(f"topic {k} out of range")
    row = model.phi()[k]
    order = sorted(range(model.V), key=lambda w: (-row[w], model.vocabulary[w]))
    return [(model.vocabulary[w], float(row[w])) for w in order[:n]]


def doc_topics(model, d):
    """Smoothed topic distribution of document ``d``."""
    alpha, K = model.config.alpha, model.K
    counts = model.n_dk[d]
    denom = sum(counts) + K * alpha
    return [(c + alpha) / denom for c in counts]


def perplexity(model, corpus):
    theta, phi = model.theta(), model.phi()
    d_idx = np.fromiter((d for d, doc in enumerate(corpus.documents) for _ in doc), dtype=np.int64)
    w_idx = np.fromiter((w for doc in corpus.documents for w in doc), dtype=np.int64)
    if not len(w_idx):
        return 1.0
    p = np.einsum("ik,ki->i", theta[d_idx], phi[:, w_idx])
    return float(np.exp(-np.log(p).sum() / len(w_idx)))


def topic_ranking(model):
    """Topics ordered by corpus-wide mean document share, largest first."""
    share = model.theta().mean(axis=0)
    return sorted(range(model.K), key=lambda k: (-share[k], k))


def dominant_topics(model):
    """argmax topic per document (lowest index on ties)."""
    return [int(np.argmax(row)) for row in np.asarray(model.n_dk).reshape(-1, model.K)]


# ---------------------------------------------------------------------------
# persistence and export


def save_model(model, corpus, path):
    payload = model.to_dict()
    payload["corpus"] = {
        "documents": corpus.documents,
        "doc_ids": corpus.doc_ids,
        "doc_dates": [d.isoformat() if d else None for d in corpus.doc_dates],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, sort_keys=True)


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    c = payload["corpus"]
    corpus = Corpus(
        c["documents"], payload["vocabulary"], c["doc_ids"],
        [dt.date.fromisoformat(d) if d else None for d in c["doc_dates"]],
    )
    model = LdaModel.from_assignments(LdaConfig(**payload["config"]), corpus, payload["z"])
    return model, corpus


def _fmt(x):
    return f"{x:.8f}"


def write_topic_table(model, path, n=5):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("topic", "rank", "term", "phi"))
        for rank, k in enumerate(topic_ranking(model)):
            for term, p in top_words(model, k, n):
                w.writerow((k, rank, term, _fmt(p)))


def write_doc_topic_table(model, corpus, path):
    theta = model.theta()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("doc_id", "topic", "theta"))
        for d, doc_id in enumerate(corpus.doc_ids):
            for k in range(model.K):
                w.writerow((doc_id, k, _fmt(theta[d, k])))


# ---------------------------------------------------------------------------
# synthetic data


def make_planted_corpus(n_docs=60, vocab_size=30, n_topics=3, doc_len=50,
                        signature=3, signature_weight=6.0, doc_alpha=0.1, seed=42):
    """Documents drawn from ``n_topics`` disjoint word blocks.

    Topic t owns the t-th block of B = vocab_size // n_topics terms;
    its first ``signature`` terms carry ``signature_weight`` times the mass
    of the rest. Returns ``(texts, planted)`` where ``planted[t]`` lists the
    signature terms of topic t.
    """
    rng = np.random.default_rng(seed)
    block = vocab_size // n_topics
    terms = [f"w{chr(97 + i // 26)}{chr(97 + i % 26)}" for i in range(vocab_size)]
    phi = np.zeros((n_topics, vocab_size))
    planted = []
    for t in range(n_topics):
        lo = t * block
        phi[t, lo:lo + block] = 1.0
        phi[t, lo:lo + signature] = signature_weight
        phi[t] /= phi[t].sum()
        planted.append(terms[lo:lo + signature])
    texts = []
    for _ in range(n_docs):
        theta = rng.dirichlet([doc_alpha] * n_topics)
        zs = rng.choice(n_topics, size=doc_len, p=theta)
        words = [terms[rng.choice(vocab_size, p=phi[z])] for z in zs]
        texts.append(" ".join(words))
    return texts, planted


# ---------------------------------------------------------------------------
# estimator


class GibbsLDA(BaseEstimator, TransformerMixin):
    """LDA topic model with a scikit-learn interface.

    ``fit`` accepts raw texts (tokenized with :func:`preprocess`) or a
    prepared :class:`Corpus`. ``transform`` folds documents in by Gibbs
    sampling against the fitted topic-word counts.

    Parameters
    ----------
    n_components : int
        Number of topics K.
    alpha, beta : float
        Symmetric document-topic and topic-word priors.
    n_sweeps : int
        Gibbs sweeps during ``fit``.
    random_state : int
        Seed of the SplitMix64 stream.
    min_df : int
        Minimum document frequency for a term to enter the vocabulary.
    n_fold_in_sweeps : int
        Sweeps used by ``transform`` for unseen documents.
    """

    def __init__(self, n_components=5, alpha=0.1, beta=0.01, n_sweeps=500, random_state=42,
                 min_df=2, n_fold_in_sweeps=50):
        self.n_components = n_components
        self.alpha = alpha
        self.beta = beta
        self.n_sweeps = n_sweeps
        self.random_state = random_state
        self.min_df = min_df
        self.n_fold_in_sweeps = n_fold_in_sweeps

    def _config(self):
        return LdaConfig(self.n_components, self.alpha, self.beta, self.n_sweeps,
                         int(self.random_state or 0))

    def fit(self, X, y=None, doc_ids=None, doc_dates=None, callback=None):
        X = check_documents(X)
        config = self._config()
        if isinstance(X, Corpus):
            corpus = X
            self._kept = list(range(len(corpus)))
        else:
            ids = list(doc_ids) if doc_ids is not None else [str(i) for i in range(len(X))]
            corpus = preprocess(X, ids, doc_dates, min_df=self.min_df)
            pos = {did: i for i, did in enumerate(ids)}
            self._kept = [pos[did] for did in corpus.doc_ids]
        self._n_input = len(X)
        self.model_ = fit(corpus, config, callback)
        self.corpus_ = corpus
        self.vocabulary_ = {t: i for i, t in enumerate(corpus.vocabulary)}
        self.components_ = self.model_.phi()
        return self

    def _training_theta(self):
        out = np.full((self._n_input, self.n_components), 1.0 / self.n_components)
        out[self._kept] = self.model_.theta()
        return out

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, y, **fit_params)._training_theta()

    def transform(self, X):
        check_is_fitted(self, "model_")
        X = check_documents(X)
        if isinstance(X, Corpus):
            docs = [[self.vocabulary_[X.vocabulary[w]] for w in doc
                     if X.vocabulary[w] in self.vocabulary_] for doc in X.documents]
        else:
            docs = [[self.vocabulary_[t] for t in tokenize(s) if t in self.vocabulary_] for s in X]
        return fold_in(self.model_, docs, self.n_fold_in_sweeps, int(self.random_state or 0))

    def perplexity(self):
        check_is_fitted(self, "model_")
        return perplexity(self.model_, self.corpus_)

    def top_words(self, k, n=5):
        check_is_fitted(self, "model_")
        return top_words(self.model_, k, n)


def fold_in(model, docs, sweeps, seed):
    """Topic distributions of new documents with topic-word counts frozen."""
    K, alpha, beta = model.K, model.config.alpha, model.config.beta
    phi = model.phi()
    rng = SplitMix64(seed)
    out = np.empty((len(docs), K))
    for r, doc in enumerate(docs):
        z = [rng.randbelow(K) for _ in doc]
        ndk = [0] * K
        for k in z:
            ndk[k] += 1
        for _ in range(sweeps):
            for i, w in enumerate(doc):
                ndk[z[i]] -= 1
                weights = [(ndk[t] + alpha) * phi[t, w] for t in range(K)]
                u = rng.random() * sum(weights)
                acc, k = 0.0, K - 1
                for t in range(K):
                    acc += weights[t]
                    if acc > u:
                        k = t
                        break
                z[i] = k
                ndk[k] += 1
        out[r] = [(c + alpha) / (len(doc) + K * alpha) for c in ndk]
    return out
