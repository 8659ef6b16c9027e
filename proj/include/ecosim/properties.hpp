#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace ecosim {

enum class Sex { none, female, male };

inline const char* to_string(Sex s) {
    switch (s) {
        case Sex::none: return "none";
        case Sex::female: return "female";
        case Sex::male: return "male";
    }
    return "none";
}

// Physical properties in SI units, chemical concentrations in molarity-like
// scalars (Energy is the glucose stand-in), biological properties explicit.
// std::map keeps iteration order deterministic.
struct PropertyBag {
    std::map<std::string, double> physical;
    std::map<std::string, double> chemical;
    double age_s = 0.0;
    Sex sex = Sex::none;
    double fertility = 0.0;

    double get(const std::string& name) const {
        if (name == "Age") return age_s;
        if (name == "Fertility") return fertility;
        if (auto it = chemical.find(name); it != chemical.end()) return it->second;
        if (auto it = physical.find(name); it != physical.end()) return it->second;
        throw std::out_of_range("unknown property: " + name);
    }

    bool has(const std::string& name) const {
        return name == "Age" || name == "Fertility" || chemical.count(name) > 0 ||
               physical.count(name) > 0;
    }

    double energy() const {
        auto it = chemical.find("Energy");
        return it == chemical.end() ? 0.0 : it->second;
    }

    void set_energy(double v) { chemical["Energy"] = v; }

    void add_energy(double dv) { chemical["Energy"] = energy() + dv; }
};

}  // namespace ecosim
