#include "sdice/population.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdice {

namespace {

double interp(const std::vector<LifetimeTable::Row>& rows, double year,
              double LifetimeTable::Row::*field) {
    if (year <= rows.front().year) return rows.front().*field;
    if (year >= rows.back().year) return rows.back().*field;
    std::size_t hi = 1;
    while (rows[hi].year < year) ++hi;
    const auto& a = rows[hi - 1];
    const auto& b = rows[hi];
    const double w = (year - a.year) / (b.year - a.year);
    return a.*field + w * (b.*field - a.*field);
}

}  // namespace

double LifetimeTable::population(double year) const {
    return interp(rows, year, &Row::population_millions);
}

double LifetimeTable::life_expectancy(double year) const {
    return interp(rows, year, &Row::life_expectancy_years);
}

void LifetimeTable::validate() const {
    if (rows.empty()) throw std::invalid_argument("population table: no rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (!std::isfinite(r.year) || !std::isfinite(r.population_millions) ||
            !std::isfinite(r.life_expectancy_years))
            throw std::invalid_argument("population table: non-finite entry");
        if (r.population_millions <= 0.0)
            throw std::invalid_argument("population table: population must be positive");
        if (r.life_expectancy_years <= 0.0)
            throw std::invalid_argument("population table: life expectancy must be positive");
        if (i > 0 && rows[i - 1].year >= r.year)
            throw std::invalid_argument("population table: years must be strictly increasing");
    }
}

LifetimeTable LifetimeTable::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("population table: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("population table: empty file " + path);
    // Tolerate a UTF-8 BOM and surrounding whitespace in the header.
    std::string header;
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c)) && static_cast<unsigned char>(c) < 0x80)
            header += c;
    if (header != "year,population_millions,life_expectancy_years")
        throw std::runtime_error("population table: unexpected header in " + path);

    LifetimeTable table;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        Row r;
        char trailing;
        if (std::sscanf(line.c_str(), "%lf ,%lf ,%lf %c", &r.year, &r.population_millions,
                        &r.life_expectancy_years, &trailing) != 3) {
            std::ostringstream msg;
            msg << "population table: malformed row at " << path << ":" << lineno;
            throw std::runtime_error(msg.str());
        }
        table.rows.push_back(r);
    }
    table.validate();
    return table;
}

LifetimeTable LifetimeTable::constant_fallback() {
    LifetimeTable table;
    table.rows = {{2015.0, 7403.0, 71.0}};
    table.fallback = true;
    return table;
}

}  // namespace sdice
