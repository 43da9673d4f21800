"""Character tables of Suzuki p-groups over finite fields."""
