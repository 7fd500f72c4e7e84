#include "rdfstar/term.hpp"

#include <atomic>

#include "char_classes.hpp"
#include "rdfstar/vocab.hpp"

namespace rdfstar {

namespace {

std::atomic<std::size_t> g_max_nesting{128};

std::size_t hash_combine(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_string(const std::string& s) { return std::hash<std::string>{}(s); }

bool valid_language_tag(const std::string& tag) {
    if (tag.empty()) return false;
    bool in_first = true;
    bool any = false;
    for (std::size_t i = 0; i < tag.size(); ++i) {
        char c = tag[i];
        if (c == '-') {
            if (!any) return false;
            in_first = false;
            any = false;
            continue;
        }
        bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
        bool digit = c >= '0' && c <= '9';
        if (in_first ? !alpha : !(alpha || digit)) return false;
        any = true;
    }
    return any;
}

std::string lowercase(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

} // namespace

NestingDepthError::NestingDepthError(std::size_t d, std::size_t l)
    : std::runtime_error("nesting depth " + std::to_string(d) + " exceeds limit " +
                         std::to_string(l)),
      depth(d),
      limit(l) {}

std::size_t max_nesting_depth() { return g_max_nesting.load(); }
void set_max_nesting_depth(std::size_t limit) { g_max_nesting.store(limit); }

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (value_.empty()) throw std::invalid_argument("IRI must not be empty");
    for (char c : value_) {
        if (c == '<' || c == '>' || c == ' ' || c == '\t' || c == '\r' || c == '\n')
            throw std::invalid_argument("IRI contains whitespace or angle bracket: " + value_);
    }
}

BlankNode::BlankNode(std::string label) : label_(std::move(label)) {
    if (!chars::is_valid_blank_label(label_))
        throw std::invalid_argument("invalid blank node label: " + label_);
}

Literal::Literal(std::string lexical, Iri datatype, std::optional<std::string> language)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)), language_(std::move(language)) {}

Literal Literal::str(std::string lexical) {
    return Literal(std::move(lexical), vocab::xsd_string(), std::nullopt);
}

Literal Literal::typed(std::string lexical, Iri datatype) {
    if (datatype == vocab::rdf_lang_string())
        throw std::invalid_argument("rdf:langString literals require a language tag");
    return Literal(std::move(lexical), std::move(datatype), std::nullopt);
}

Literal Literal::lang_tagged(std::string lexical, std::string language) {
    if (!valid_language_tag(language))
        throw std::invalid_argument("invalid language tag: " + language);
    return Literal(std::move(lexical), vocab::rdf_lang_string(), lowercase(std::move(language)));
}

StarTerm::StarTerm(Iri iri) : value_(std::move(iri)) {}
StarTerm::StarTerm(BlankNode bnode) : value_(std::move(bnode)) {}
StarTerm::StarTerm(Literal literal) : value_(std::move(literal)) {}
StarTerm::StarTerm(StarTriple triple)
    : value_(std::make_shared<const StarTriple>(std::move(triple))) {}
StarTerm::StarTerm(TriplePtr triple) : value_(std::move(triple)) {
    if (!std::get<TriplePtr>(value_)) throw std::invalid_argument("null triple term");
}

std::size_t StarTerm::hash() const {
    switch (value_.index()) {
        case 0: return hash_combine(1, hash_string(std::get<Iri>(value_).value()));
        case 1: return hash_combine(2, hash_string(std::get<BlankNode>(value_).label()));
        case 2: {
            const Literal& l = std::get<Literal>(value_);
            std::size_t h = hash_combine(3, hash_string(l.lexical()));
            h = hash_combine(h, hash_string(l.datatype().value()));
            if (l.language()) h = hash_combine(h, hash_string(*l.language()));
            return h;
        }
        default: return hash_combine(4, std::get<TriplePtr>(value_)->hash());
    }
}

bool operator==(const StarTerm& a, const StarTerm& b) {
    if (a.value_.index() != b.value_.index()) return false;
    switch (a.value_.index()) {
        case 0: return std::get<Iri>(a.value_) == std::get<Iri>(b.value_);
        case 1: return std::get<BlankNode>(a.value_) == std::get<BlankNode>(b.value_);
        case 2: return std::get<Literal>(a.value_) == std::get<Literal>(b.value_);
        default: {
            const TriplePtr& ta = std::get<TriplePtr>(a.value_);
            const TriplePtr& tb = std::get<TriplePtr>(b.value_);
            if (ta == tb) return true;
            return *ta == *tb;
        }
    }
}

bool operator<(const StarTerm& a, const StarTerm& b) { return compare(a, b) < 0; }

StarTriple::StarTriple(StarTerm subject, Iri predicate, StarTerm object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
    if (subject_.is_literal()) throw std::invalid_argument("triple subject must not be a literal");
    std::size_t d = 0;
    if (subject_.is_triple()) d = subject_.triple().depth() + 1;
    if (object_.is_triple()) d = std::max(d, object_.triple().depth() + 1);
    depth_ = d;
    if (depth_ > max_nesting_depth()) throw NestingDepthError(depth_, max_nesting_depth());
    std::size_t h = hash_combine(17, subject_.hash());
    h = hash_combine(h, hash_string(predicate_.value()));
    hash_ = hash_combine(h, object_.hash());
}

bool operator==(const StarTriple& a, const StarTriple& b) {
    if (a.hash_ != b.hash_) return false;
    return a.subject_ == b.subject_ && a.predicate_ == b.predicate_ && a.object_ == b.object_;
}

bool operator<(const StarTriple& a, const StarTriple& b) { return compare(a, b) < 0; }

namespace {
int compare_strings(const std::string& a, const std::string& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

int term_rank(const StarTerm& t) {
    if (t.is_iri()) return 0;
    if (t.is_bnode()) return 1;
    if (t.is_literal()) return 2;
    return 3;
}
} // namespace

int compare(const StarTerm& a, const StarTerm& b) {
    int ra = term_rank(a), rb = term_rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (ra) {
        case 0: return compare_strings(a.iri().value(), b.iri().value());
        case 1: return compare_strings(a.bnode().label(), b.bnode().label());
        case 2: {
            const Literal& la = a.literal();
            const Literal& lb = b.literal();
            if (int c = compare_strings(la.datatype().value(), lb.datatype().value())) return c;
            if (int c = compare_strings(la.lexical(), lb.lexical())) return c;
            return compare_strings(la.language().value_or(""), lb.language().value_or(""));
        }
        default: return compare(a.triple(), b.triple());
    }
}

int compare(const StarTriple& a, const StarTriple& b) {
    if (&a == &b) return 0;
    if (int c = compare(a.subject(), b.subject())) return c;
    if (int c = compare_strings(a.predicate().value(), b.predicate().value())) return c;
    return compare(a.object(), b.object());
}

std::size_t nesting_depth(const StarTriple& t) { return t.depth(); }

} // namespace rdfstar
