#ifndef BRENKE_ERRORS_HPP
#define BRENKE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brenke
{

// Base of every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition of an operation or a family hypothesis does not hold.
class precondition_error : public error
{
public:
    using error::error;
};

// A coefficient sequence violates a hypothesis at a specific index.
class coefficient_error : public precondition_error
{
public:
    coefficient_error(const std::string &what, std::size_t index)
        : precondition_error(what + " (coefficient index " + std::to_string(index) + ")"), m_index(index)
    {
    }

    [[nodiscard]] std::size_t index() const noexcept
    {
        return m_index;
    }

private:
    std::size_t m_index;
};

class overflow_error : public error
{
public:
    using error::error;
};

// Cumulative weight mass did not reach the truncation target.
class mass_deficit : public error
{
public:
    using error::error;
};

class positivity_error : public error
{
public:
    using error::error;
};

class non_finite_sample : public error
{
public:
    using error::error;
};

class negative_variance : public error
{
public:
    using error::error;
};

class grid_too_coarse : public precondition_error
{
public:
    using precondition_error::precondition_error;
};

class window_too_small : public precondition_error
{
public:
    using precondition_error::precondition_error;
};

} // namespace brenke

#endif
