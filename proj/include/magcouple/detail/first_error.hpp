#pragma once

#include <exception>

namespace magcouple::detail {

// Exceptions cannot leave an OpenMP region; the first one is parked here
// and rethrown once the loop has finished.
class FirstError {
public:
    template <class F>
    void run(F&& f) noexcept
    {
        try {
            f();
        } catch (...) {
#pragma omp critical(magcouple_first_error)
            if (!error_)
                error_ = std::current_exception();
        }
    }

    bool failed() const noexcept { return static_cast<bool>(error_); }

    void rethrow() const
    {
        if (error_)
            std::rethrow_exception(error_);
    }

private:
    std::exception_ptr error_;
};

}  // namespace magcouple::detail
