#pragma once

// Flat `key = value` configuration files with dotted keys and `#` comments.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gstk/contact_sensing.hpp"
#include "gstk/grasp_stiffness.hpp"
#include "gstk/hertz.hpp"

namespace gstk::harness {

struct Entry {
    std::string value;
    int line = 0;
};

/// Parsed key/value text.  Every lookup remembers the key, so unknown keys
/// can be reported afterwards with their line numbers.
class KeyValueFile {
public:
    /// Throws ParseError on lines without '=', empty keys, or duplicates.
    static KeyValueFile parse(const std::string& text, const std::string& source);
    static KeyValueFile load(const std::filesystem::path& path);

    const std::string& source() const { return source_; }
    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    const std::map<std::string, Entry>& entries() const { return entries_; }

    std::optional<std::string> get_string(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<std::int64_t> get_int(const std::string& key) const;
    std::optional<std::uint64_t> get_uint64(const std::string& key) const;
    /// Signed radius in millimetres, or "inf"/"-inf" for flat.  Returned in metres.
    std::optional<hertz::SignedRadius> get_radius_mm(const std::string& key) const;

    /// Throws ParseError naming the first key that was never looked up.
    void reject_unknown() const;

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

private:
    std::string source_;
    std::map<std::string, Entry> entries_;
    mutable std::map<std::string, bool> used_;
};

struct RunConfig {
    double fingertip_radius_mm = 10.0;
    std::string fingertip_material = "rubber";
    std::string object_material = "aluminium";
    hertz::SignedRadius object_radius = hertz::SignedRadius::flat();

    double contact_distance_mm = 40.0;
    double force_n = 5.0;
    double mu = hertz::kDefaultFriction;
    grasp::SpringVariant spring_model = grasp::SpringVariant::Extended;
    double min_separation_deg = 10.0;
    double stability_tol = grasp::kDefaultStabilityTolerance;

    double force_min_n = 0.01;
    double force_max_n = 1.0;
    int steps = 100;

    int case_b_groups = 6;
    int case_b_configs = 31;

    sensing::FingertipSurface surface = sensing::FingertipSurface::sphere(0.01);

    std::uint64_t seed = 1;
    std::filesystem::path output_dir = ".";

    /// Throws DomainError on inconsistent values or unknown materials.
    void validate() const;

    const hertz::Material& fingertip() const { return hertz::material_by_name(fingertip_material); }
    const hertz::Material& object() const { return hertz::material_by_name(object_material); }

    /// Non-fatal notices (isotropy mismatches of the selected materials).
    std::vector<std::string> warnings() const;

    /// Reads known keys; unknown keys are a ParseError.
    static RunConfig from_file(const KeyValueFile& file);
    static RunConfig load(const std::filesystem::path& path);
};

/// Shared config keys plus `contact.N.angle_deg` / `contact.N.force_n`.
struct GraspFile {
    RunConfig config;
    std::vector<int> ids;
    grasp::GraspConfiguration grasp;

    /// Throws ParseError (with line numbers) on malformed or missing
    /// contact entries, including an empty contact list.
    static GraspFile from_file(const KeyValueFile& file);
    static GraspFile load(const std::filesystem::path& path);
};

} // namespace gstk::harness
