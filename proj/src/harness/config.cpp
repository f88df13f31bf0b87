#include "gstk/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gstk/error.hpp"

namespace gstk::harness {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_full_double(const std::string& s, double& out)
{
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

template <typename Int>
bool parse_full_int(const std::string& s, Int& out)
{
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

} // namespace

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& source)
{
    KeyValueFile file;
    file.source_ = source;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (content.empty())
            continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ParseError(source, line, "expected 'key = value'");
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key.empty())
            throw ParseError(source, line, "empty key");
        if (value.empty())
            throw ParseError(source, line, "empty value for '" + key + "'");
        if (file.entries_.count(key))
            throw ParseError(source, line,
                             "duplicate key '" + key + "' (first set on line " +
                                 std::to_string(file.entries_[key].line) + ")");
        file.entries_[key] = {value, line};
    }
    return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

void KeyValueFile::fail(const std::string& key, const std::string& msg) const
{
    const auto it = entries_.find(key);
    throw ParseError(source_, it == entries_.end() ? 0 : it->second.line, key + ": " + msg);
}

std::optional<std::string> KeyValueFile::get_string(const std::string& key) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return std::nullopt;
    used_[key] = true;
    return it->second.value;
}

std::optional<double> KeyValueFile::get_double(const std::string& key) const
{
    const auto s = get_string(key);
    if (!s)
        return std::nullopt;
    double v = 0.0;
    if (!parse_full_double(*s, v) || !std::isfinite(v))
        fail(key, "expected a finite number, got '" + *s + "'");
    return v;
}

std::optional<std::int64_t> KeyValueFile::get_int(const std::string& key) const
{
    const auto s = get_string(key);
    if (!s)
        return std::nullopt;
    std::int64_t v = 0;
    if (!parse_full_int(*s, v))
        fail(key, "expected an integer, got '" + *s + "'");
    return v;
}

std::optional<std::uint64_t> KeyValueFile::get_uint64(const std::string& key) const
{
    const auto s = get_string(key);
    if (!s)
        return std::nullopt;
    std::uint64_t v = 0;
    if (!parse_full_int(*s, v))
        fail(key, "expected an unsigned 64-bit integer, got '" + *s + "'");
    return v;
}

std::optional<hertz::SignedRadius> KeyValueFile::get_radius_mm(const std::string& key) const
{
    const auto s = get_string(key);
    if (!s)
        return std::nullopt;
    if (*s == "inf" || *s == "+inf" || *s == "-inf")
        return hertz::SignedRadius::flat();
    double v = 0.0;
    if (!parse_full_double(*s, v) || !std::isfinite(v) || v == 0.0)
        fail(key, "expected a nonzero radius in mm or 'inf', got '" + *s + "'");
    return hertz::SignedRadius::meters(v * 1e-3);
}

void KeyValueFile::reject_unknown() const
{
    const Entry* first = nullptr;
    std::string first_key;
    for (const auto& [key, entry] : entries_)
        if (!used_.count(key) && (!first || entry.line < first->line)) {
            first = &entry;
            first_key = key;
        }
    if (first)
        throw ParseError(source_, first->line, "unknown key '" + first_key + "'");
}

void RunConfig::validate() const
{
    if (!(fingertip_radius_mm > 0.0))
        throw DomainError("fingertip.radius_mm must be positive");
    fingertip();
    object();
    if (!(contact_distance_mm > 0.0))
        throw DomainError("grasp.contact_distance_mm must be positive");
    if (!(force_n >= 0.0))
        throw DomainError("grasp.force_n must be non-negative");
    if (!(mu > 0.0))
        throw DomainError("grasp.mu must be positive");
    if (!(min_separation_deg >= 0.0 && min_separation_deg < 120.0))
        throw DomainError("grasp.min_separation_deg must lie in [0, 120)");
    if (!(stability_tol > 0.0))
        throw DomainError("grasp.stability_tol must be positive");
    if (!(force_min_n >= 0.0 && force_max_n > force_min_n))
        throw DomainError("sweep: need 0 <= force_min_n < force_max_n");
    if (steps < 2)
        throw DomainError("sweep.steps must be at least 2");
    if (case_b_groups < 1 || case_b_configs < 2)
        throw DomainError("case_b: need at least 1 group and 2 configurations");
    surface.validate();
}

std::vector<std::string> RunConfig::warnings() const
{
    std::vector<std::string> out;
    for (const auto* m : {&fingertip(), &object()})
        if (auto w = m->isotropy_warning())
            out.push_back(*w);
    return out;
}

namespace {

RunConfig read_run_config(const KeyValueFile& f)
{
    RunConfig c;
    if (auto v = f.get_double("fingertip.radius_mm"))
        c.fingertip_radius_mm = *v;
    if (auto v = f.get_string("fingertip.material"))
        c.fingertip_material = *v;
    if (auto v = f.get_string("object.material"))
        c.object_material = *v;
    if (auto v = f.get_radius_mm("object.signed_radius_mm"))
        c.object_radius = *v;
    if (auto v = f.get_double("grasp.contact_distance_mm"))
        c.contact_distance_mm = *v;
    if (auto v = f.get_double("grasp.force_n"))
        c.force_n = *v;
    if (auto v = f.get_double("grasp.mu"))
        c.mu = *v;
    if (auto v = f.get_string("grasp.spring_model")) {
        try {
            c.spring_model = grasp::parse_spring_variant(*v);
        } catch (const DomainError& e) {
            f.fail("grasp.spring_model", e.what());
        }
    }
    if (auto v = f.get_double("grasp.min_separation_deg"))
        c.min_separation_deg = *v;
    if (auto v = f.get_double("grasp.stability_tol"))
        c.stability_tol = *v;
    if (auto v = f.get_double("sweep.force_min_n"))
        c.force_min_n = *v;
    if (auto v = f.get_double("sweep.force_max_n"))
        c.force_max_n = *v;
    if (auto v = f.get_int("sweep.steps"))
        c.steps = static_cast<int>(*v);
    if (auto v = f.get_int("case_b.groups"))
        c.case_b_groups = static_cast<int>(*v);
    if (auto v = f.get_int("case_b.configs"))
        c.case_b_configs = static_cast<int>(*v);
    if (auto v = f.get_double("surface.alpha"))
        c.surface.alpha = *v;
    if (auto v = f.get_double("surface.beta"))
        c.surface.beta = *v;
    if (auto v = f.get_double("surface.gamma"))
        c.surface.gamma = *v;
    if (auto v = f.get_double("surface.radius_mm"))
        c.surface.R = *v * 1e-3;
    if (auto v = f.get_uint64("seed"))
        c.seed = *v;
    if (auto v = f.get_string("output_dir"))
        c.output_dir = *v;

    try {
        c.validate();
    } catch (const DomainError& e) {
        throw ParseError(f.source(), 0, e.what());
    }
    return c;
}

} // namespace

RunConfig RunConfig::from_file(const KeyValueFile& file)
{
    RunConfig c = read_run_config(file);
    file.reject_unknown();
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path)
{
    return from_file(KeyValueFile::load(path));
}

GraspFile GraspFile::from_file(const KeyValueFile& file)
{
    GraspFile g;
    g.config = read_run_config(file);

    // contact.<id>.<field>
    std::map<int, std::pair<std::optional<double>, std::optional<double>>> contacts;
    for (const auto& [key, entry] : file.entries()) {
        if (key.rfind("contact.", 0) != 0)
            continue;
        const auto dot = key.find('.', 8);
        int id = 0;
        const std::string id_text = key.substr(8, dot == std::string::npos ? std::string::npos : dot - 8);
        if (dot == std::string::npos || !parse_full_int(id_text, id) || id < 1)
            throw ParseError(file.source(), entry.line, "malformed contact key '" + key + "'");
        const std::string field = key.substr(dot + 1);
        if (field == "angle_deg")
            contacts[id].first = file.get_double(key);
        else if (field == "force_n")
            contacts[id].second = file.get_double(key);
        else
            throw ParseError(file.source(), entry.line, "unknown contact field '" + field + "'");
    }
    file.reject_unknown();

    if (contacts.empty())
        throw ParseError(file.source(), 0, "grasp file lists no contacts");

    const RunConfig& c = g.config;
    const hertz::ContactPair pair(c.fingertip_radius_mm * 1e-3, c.object_radius, c.fingertip(),
                                  c.object());
    for (const auto& [id, fields] : contacts) {
        const std::string prefix = "contact." + std::to_string(id) + ".";
        if (!fields.first)
            file.fail(prefix + "force_n", "contact " + std::to_string(id) + " has no angle_deg");
        if (!fields.second)
            file.fail(prefix + "angle_deg", "contact " + std::to_string(id) + " has no force_n");
        if (*fields.second < 0.0)
            file.fail(prefix + "force_n", "force must be non-negative");
        g.ids.push_back(id);
        g.grasp.contacts.push_back(grasp::great_circle_contact(
            *fields.first * std::numbers::pi / 180.0, c.contact_distance_mm * 1e-3, pair,
            *fields.second));
    }
    return g;
}

GraspFile GraspFile::load(const std::filesystem::path& path)
{
    return from_file(KeyValueFile::load(path));
}

} // namespace gstk::harness
